//! Local rewrites of front codes modeling transversal crossings of the
//! Lambda, K+, K-, T and Pi strata, their signs, and the canned event loops.
//!
//! Inserted events sit inside one arc `A` of the old code as
//! `E --lead--> e1 --a1--> e2 ... en --an--> E'` with `lead * a1 * ... * an = A`.
//! The small arcs carry fiber powers only, so every template is central data
//! and the loop pairs of the new double points are read off directly.

use crate::classes::{g_map, kminus_key, kplus_key, pi_key, t_key, ClassKey, Family};
use crate::error::{Error, Result};
use crate::front::{global_class, indices, loop_pair_at, validate, Event, FrontCode, Sign, Slot, XType};
use crate::group::{orientation_parity, Ambient, GroupElem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stratum {
    Lambda,
    Kplus,
    Kminus,
    T,
    Pi,
}

impl Stratum {
    pub fn name(self) -> &'static str {
        match self {
            Stratum::Lambda => "Lambda",
            Stratum::Kplus => "K+",
            Stratum::Kminus => "K-",
            Stratum::T => "T",
            Stratum::Pi => "Pi",
        }
    }
}

/// For each side of a vanishing triangle: does its own orientation agree
/// with the one induced by the cyclic order of visits?
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TriangleData {
    pub matches: [bool; 3],
}

impl TriangleData {
    /// The triangle on the other side of the triple point: every side flips.
    pub fn opposite(self) -> TriangleData {
        TriangleData {
            matches: self.matches.map(|m| !m),
        }
    }
}

pub fn triangle_sign(t: &TriangleData) -> Sign {
    let q = t.matches.iter().filter(|&&m| m).count();
    if q % 2 == 0 {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// A cusp crossing is signed by the triangle of its figure-eight substitute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PiLocalData {
    pub substituted: TriangleData,
}

pub fn pi_crossing_sign(p: &PiLocalData) -> Sign {
    triangle_sign(&p.substituted)
}

/// `weight` is doubled: 2 for a full crossing, 1 for the Pi half weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CrossingEvent {
    pub stratum: Stratum,
    pub sign: Sign,
    pub key: Option<ClassKey>,
    pub weight: i64,
}

impl CrossingEvent {
    pub fn new(stratum: Stratum, sign: Sign, key: Option<ClassKey>) -> CrossingEvent {
        let weight = if stratum == Stratum::Pi { 1 } else { 2 };
        CrossingEvent {
            stratum,
            sign,
            key,
            weight,
        }
    }

    pub fn reversed(&self) -> CrossingEvent {
        CrossingEvent {
            sign: self.sign.flip(),
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveOp {
    Create,
    Remove,
}

/// One stratum crossing.
///
/// Sites: K creation `[i, j]` (arcs of the two branches, `i == j` allowed),
/// K removal `[p, q]` (first events of the two adjacent pairs, `p` holding the
/// first slot of the earlier new point); Lambda creation `[arc]`, removal
/// `[p]`; T `[p1, p2, p3]` (first events of three adjacent pairs); Pi creation
/// `[cusp, arc]`, removal `[cusp, q]`.
///
/// For K strata `inverse` selects inverse self-tangency and the operation
/// follows from the sign; for Pi it selects the mirrored line order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveSpec {
    pub stratum: Stratum,
    pub direction: Sign,
    pub site: Vec<usize>,
    pub inverse: bool,
    pub rotation: Sign,
    pub op: Option<MoveOp>,
    pub triangle: Option<TriangleData>,
    pub witness: Vec<GroupElem>,
}

impl MoveSpec {
    pub fn new(stratum: Stratum, direction: Sign, site: Vec<usize>) -> MoveSpec {
        MoveSpec {
            stratum,
            direction,
            site,
            inverse: false,
            rotation: Sign::Plus,
            op: None,
            triangle: None,
            witness: Vec::new(),
        }
    }

    pub fn inverse(mut self, inverse: bool) -> MoveSpec {
        self.inverse = inverse;
        self
    }

    pub fn rotation(mut self, r: Sign) -> MoveSpec {
        self.rotation = r;
        self
    }

    pub fn op(mut self, op: MoveOp) -> MoveSpec {
        self.op = Some(op);
        self
    }

    pub fn triangle(mut self, t: TriangleData) -> MoveSpec {
        self.triangle = Some(t);
        self
    }

    pub fn witness(mut self, w: Vec<GroupElem>) -> MoveSpec {
        self.witness = w;
        self
    }

    fn resolved_op(&self) -> Result<MoveOp> {
        let derived = match self.stratum {
            Stratum::Kplus | Stratum::Kminus => {
                if (self.direction == Sign::Plus) != self.inverse {
                    MoveOp::Create
                } else {
                    MoveOp::Remove
                }
            }
            Stratum::Lambda => {
                if self.direction == Sign::Plus {
                    MoveOp::Create
                } else {
                    MoveOp::Remove
                }
            }
            Stratum::T => MoveOp::Create,
            Stratum::Pi => return Ok(self.op.unwrap_or(MoveOp::Create)),
        };
        match self.op {
            Some(op) if op != derived && self.stratum != Stratum::T => Err(Error::InvalidMove(format!(
                "{} crossing with sign {} cannot {:?}",
                self.stratum.name(),
                self.direction.symbol(),
                op
            ))),
            _ => Ok(derived),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveOutcome {
    pub code: FrontCode,
    pub event: CrossingEvent,
    /// The move undoing this one.
    pub undo: MoveSpec,
}

struct Insertion {
    arc: usize,
    lead: GroupElem,
    items: Vec<(Event, GroupElem)>,
}

/// Splices events into arcs; at most one insertion per arc. Returns the new
/// code and the positions of the inserted events, per insertion.
fn splice(code: &FrontCode, ins: Vec<Insertion>) -> (FrontCode, Vec<Vec<usize>>) {
    let m = code.events.len();
    let mut pos = vec![Vec::new(); ins.len()];
    if m == 0 {
        let Insertion { lead, mut items, .. } = ins.into_iter().next().expect("one insertion");
        let last = items.len() - 1;
        items[last].1 = items[last].1.compose(&lead).expect("same group");
        pos[0] = (0..items.len()).collect();
        let (events, arcs) = items.into_iter().unzip();
        return (FrontCode::new(code.surface, events, arcs), pos);
    }
    let mut events = Vec::new();
    let mut arcs = Vec::new();
    for k in 0..m {
        events.push(code.events[k]);
        match ins.iter().position(|x| x.arc == k) {
            Some(n) => {
                arcs.push(ins[n].lead.clone());
                for (e, a) in &ins[n].items {
                    pos[n].push(events.len());
                    events.push(*e);
                    arcs.push(a.clone());
                }
            }
            None => arcs.push(code.arcs[k].clone()),
        }
    }
    (FrontCode::new(code.surface, events, arcs), pos)
}

/// Deletes events, merging the arcs around them. The first surviving event
/// becomes the basepoint. Returns the code and, for each deleted position,
/// the arc of the new code it sat in.
fn excise(code: &FrontCode, gone: &[usize]) -> (FrontCode, Vec<usize>) {
    let m = code.events.len();
    let keep: Vec<usize> = (0..m).filter(|i| !gone.contains(i)).collect();
    if keep.is_empty() {
        let full = code.arcs.iter().fold(code.identity_arc(), |acc, a| acc.compose(a).expect("same group"));
        return (FrontCode::new(code.surface, vec![], vec![full]), vec![0; gone.len()]);
    }
    let events = keep.iter().map(|&i| code.events[i]).collect();
    let arcs = (0..keep.len())
        .map(|k| code.arc_product(keep[k], keep[(k + 1) % keep.len()]))
        .collect::<Vec<_>>();
    let arcs = if keep.len() == 1 {
        vec![code.arcs.iter().cycle().skip(keep[0]).take(m).fold(code.identity_arc(), |acc, a| {
            acc.compose(a).expect("same group")
        })]
    } else {
        arcs
    };
    let host = gone
        .iter()
        .map(|&g| keep.iter().rposition(|&k| k < g).unwrap_or(keep.len() - 1))
        .collect();
    (FrontCode::new(code.surface, events, arcs), host)
}

fn same_up_to_rotation(a: &FrontCode, b: &FrontCode) -> bool {
    if a.events.len() != b.events.len() || a.surface != b.surface {
        return false;
    }
    let m = a.events.len().max(1);
    (0..m).any(|r| &a.rotate_basepoint(r) == b)
}

fn stf_fiber(code: &FrontCode, k: i64) -> GroupElem {
    GroupElem::fiber_elem(code.surface, Ambient::Stf, k).expect("STF fiber")
}

fn mul(a: &GroupElem, b: &GroupElem) -> GroupElem {
    a.compose(b).expect("same group")
}

fn maslov(code: &FrontCode) -> i64 {
    indices(code).0
}

/// Loop classes cut out by two points on arcs `i` and `j`: from the first to
/// the second and back. For `i == j` the first loop is trivial.
fn split_loops(code: &FrontCode, i: usize, j: usize) -> (GroupElem, GroupElem) {
    let n = code.arcs.len();
    if i == j {
        let full = (0..n).fold(code.identity_arc(), |acc, k| mul(&acc, &code.arcs[(i + k) % n]));
        return (code.identity_arc(), full);
    }
    (code.arc_product(i, j), code.arc_product(j, i))
}

fn check_witness(m: &MoveSpec, loops: &[GroupElem]) -> Result<()> {
    if m.witness.is_empty() {
        return Ok(());
    }
    if m.witness.len() != loops.len() {
        return Err(Error::InconsistentSite(format!(
            "expected {} witness classes, got {}",
            loops.len(),
            m.witness.len()
        )));
    }
    let same = match loops.len() {
        3 => t_key(&m.witness[0], &m.witness[1], &m.witness[2], None)? == t_key(&loops[0], &loops[1], &loops[2], None)?,
        _ => kplus_key(&m.witness[0], &m.witness[1], None)? == kplus_key(&loops[0], &loops[1], None)?,
    };
    if same {
        Ok(())
    } else {
        Err(Error::InconsistentSite("witness does not match the loops at the site".into()))
    }
}

fn k_key(code: &FrontCode, stratum: Stratum, s1: &GroupElem, s2: &GroupElem) -> Result<ClassKey> {
    let mu = Some(maslov(code));
    if stratum == Stratum::Kplus {
        return kplus_key(s1, s2, mu);
    }
    if !code.surface.orientable() {
        return Err(Error::UnsupportedSurface(format!(
            "K- classes need an orientable surface, got {}",
            code.surface
        )));
    }
    let h = GroupElem::fiber_elem(code.surface, Ambient::Ptf, 1)?;
    kminus_key(&s1.to_ptf()?.compose(&h.inverse())?, &s2.to_ptf()?.compose(&h)?, mu)
}

/// Creates the two double points of a self-tangency on arcs `i` and `j`.
/// Returns the code and the first positions of the two inserted pairs.
fn create_k(code: &FrontCode, minus: bool, inverse: bool, i: usize, j: usize, ids: (u32, u32)) -> (FrontCode, usize, usize) {
    use XType::*;
    let (u, v) = ids;
    let (t1, t2) = match (minus, inverse) {
        (false, false) => (R1, R1),
        (false, true) => (R2, R2),
        (true, false) => (R2, C2),
        (true, true) => (R1, C1),
    };
    let dp = |id, slot, xtype| Event::DoublePoint { id, slot, xtype };
    let one = code.identity_arc();
    // small arcs and compensations on the two branches
    let (x, ci, y, cj) = match (minus, inverse) {
        (true, false) => (one.clone(), one.clone(), stf_fiber(code, -1), stf_fiber(code, 1)),
        (true, true) => (stf_fiber(code, -1), stf_fiber(code, 1), one.clone(), one.clone()),
        _ => (one.clone(), one.clone(), one.clone(), one.clone()),
    };
    let ai = if i == j { one.clone() } else { code.arcs[i].clone() };
    let branch_i = vec![(dp(u, Slot::First, t1), x), (dp(v, Slot::Second, t2), mul(&ci, &ai))];
    let j_visits = if inverse {
        [(v, Slot::First, t2), (u, Slot::Second, t1)]
    } else {
        [(u, Slot::Second, t1), (v, Slot::First, t2)]
    };
    let branch_j = vec![
        (dp(j_visits[0].0, j_visits[0].1, j_visits[0].2), y),
        (dp(j_visits[1].0, j_visits[1].1, j_visits[1].2), mul(&cj, &code.arcs[j])),
    ];
    if i == j {
        let mut items = branch_i;
        items.extend(branch_j);
        let (c, pos) = splice(
            code,
            vec![Insertion {
                arc: i,
                lead: one,
                items,
            }],
        );
        return (c, pos[0][0], pos[0][2]);
    }
    let (c, pos) = splice(
        code,
        vec![
            Insertion {
                arc: i,
                lead: one.clone(),
                items: branch_i,
            },
            Insertion {
                arc: j,
                lead: one,
                items: branch_j,
            },
        ],
    );
    (c, pos[0][0], pos[1][0])
}

fn create_lambda(code: &FrontCode, arc: usize, rot: Sign, id: u32) -> (FrontCode, usize) {
    let one = code.identity_arc();
    let (s0, s1) = match rot {
        Sign::Plus => (Slot::First, Slot::Second),
        Sign::Minus => (Slot::Second, Slot::First),
    };
    let d = |slot| Event::DoublePoint {
        id,
        slot,
        xtype: XType::R1,
    };
    let c = |maslov| Event::Cusp { maslov, rotation: rot };
    let items = vec![
        (d(s0), one.clone()),
        (c(Sign::Plus), one.clone()),
        (c(Sign::Minus), one.clone()),
        (d(s1), code.arcs[arc].clone()),
    ];
    let (c, pos) = splice(code, vec![Insertion { arc, lead: one, items }]);
    (c, pos[0][0])
}

/// Cusp at event `c` crosses the branch on arc `j`. Returns the code, the new
/// cusp position and the first position of the pair on the line.
fn create_pi(code: &FrontCode, c: usize, j: usize, mirrored: bool, ids: (u32, u32)) -> (FrontCode, usize, usize) {
    use XType::*;
    let m = code.events.len();
    let (u, v) = ids;
    let one = code.identity_arc();
    let dp = |id, slot, xtype| Event::DoublePoint { id, slot, xtype };
    let (tu, tv) = if mirrored { (C2, C1) } else { (R1, R2) };
    let line = if mirrored {
        [dp(u, Slot::Second, tu), dp(v, Slot::First, tv)]
    } else {
        [dp(v, Slot::First, tv), dp(u, Slot::Second, tu)]
    };
    let before = (c + m - 1) % m;
    let ins = vec![
        Insertion {
            arc: before,
            lead: code.arcs[before].clone(),
            items: vec![(dp(u, Slot::First, tu), one.clone())],
        },
        Insertion {
            arc: c,
            lead: one.clone(),
            items: vec![(dp(v, Slot::Second, tv), code.arcs[c].clone())],
        },
        Insertion {
            arc: j,
            lead: one.clone(),
            items: vec![(line[0], one), (line[1], code.arcs[j].clone())],
        },
    ];
    let (out, pos) = splice(code, ins);
    (out, pos[1][0] - 1, pos[2][0])
}

fn dp_id(code: &FrontCode, p: usize) -> Result<u32> {
    match code.events.get(p) {
        Some(Event::DoublePoint { id, .. }) => Ok(*id),
        _ => Err(Error::InconsistentSite(format!("event {p} is not a double point visit"))),
    }
}

fn slot_at(code: &FrontCode, p: usize) -> Option<Slot> {
    match code.events.get(p) {
        Some(Event::DoublePoint { slot, .. }) => Some(*slot),
        _ => None,
    }
}

fn site_len(m: &MoveSpec, n: usize) -> Result<()> {
    if m.site.len() == n {
        Ok(())
    } else {
        Err(Error::InconsistentSite(format!(
            "{} move needs {n} site indices, got {}",
            m.stratum.name(),
            m.site.len()
        )))
    }
}

fn in_range(code: &FrontCode, idx: &[usize], bound: usize) -> Result<()> {
    match idx.iter().find(|&&i| i >= bound) {
        Some(i) => Err(Error::InconsistentSite(format!(
            "site index {i} out of range for a code with {} events",
            code.events.len()
        ))),
        None => Ok(()),
    }
}

pub fn apply_move(code: &FrontCode, m: &MoveSpec) -> Result<MoveOutcome> {
    let report = validate(code);
    if !report.is_valid() {
        return Err(Error::InvalidFront(format!("{:?}", report.violations)));
    }
    let op = m.resolved_op()?;
    let out = match (m.stratum, op) {
        (Stratum::Kplus | Stratum::Kminus, MoveOp::Create) => k_create(code, m)?,
        (Stratum::Kplus | Stratum::Kminus, MoveOp::Remove) => k_remove(code, m)?,
        (Stratum::Lambda, MoveOp::Create) => lambda_create(code, m)?,
        (Stratum::Lambda, MoveOp::Remove) => lambda_remove(code, m)?,
        (Stratum::T, _) => t_swap(code, m)?,
        (Stratum::Pi, MoveOp::Create) => pi_create(code, m)?,
        (Stratum::Pi, MoveOp::Remove) => pi_remove(code, m)?,
    };
    debug_assert!(validate(&out.code).is_valid(), "{:?}", validate(&out.code));
    Ok(out)
}

fn k_create(code: &FrontCode, m: &MoveSpec) -> Result<MoveOutcome> {
    site_len(m, 2)?;
    let arcs = code.arcs.len();
    in_range(code, &m.site, arcs)?;
    let (i, j) = (m.site[0], m.site[1]);
    let (s1, s2) = split_loops(code, i, j);
    check_witness(m, &[s1.clone(), s2.clone()])?;
    let key = k_key(code, m.stratum, &s1, &s2)?;
    let u = code.fresh_id();
    let minus = m.stratum == Stratum::Kminus;
    let (out, p, q) = create_k(code, minus, m.inverse, i, j, (u, u + 1));
    let mut undo = m.clone();
    undo.direction = m.direction.flip();
    undo.site = vec![p, q];
    undo.op = None;
    undo.witness = Vec::new();
    Ok(MoveOutcome {
        code: out,
        event: CrossingEvent::new(m.stratum, m.direction, Some(key)),
        undo,
    })
}

fn k_remove(code: &FrontCode, m: &MoveSpec) -> Result<MoveOutcome> {
    site_len(m, 2)?;
    let n = code.events.len();
    let (p, q) = (m.site[0], m.site[1]);
    in_range(code, &[p + 1, q + 1], n)?;
    let gone = [p, p + 1, q, q + 1];
    if (0..4).any(|a| (0..a).any(|b| gone[a] == gone[b])) {
        return Err(Error::InconsistentSite("the two pairs overlap".into()));
    }
    let (u, v) = (dp_id(code, p)?, dp_id(code, p + 1)?);
    let ids = [u, v];
    if u == v || !ids.contains(&dp_id(code, q)?) || !ids.contains(&dp_id(code, q + 1)?) || dp_id(code, q)? == dp_id(code, q + 1)? {
        return Err(Error::InconsistentSite("sites do not hold a pair of new double points".into()));
    }
    let (base, host) = excise(code, &gone);
    let (i, j) = (host[0], host[2]);
    let minus = m.stratum == Stratum::Kminus;
    let (rebuilt, _, _) = create_k(&base, minus, m.inverse, i, j, (u, v));
    if !same_up_to_rotation(&rebuilt, code) {
        return Err(Error::InconsistentSite(format!(
            "events at {p} and {q} are not a removable {}{} pair",
            m.stratum.name(),
            if m.inverse { " inverse" } else { "" }
        )));
    }
    let (s1, s2) = split_loops(&base, i, j);
    check_witness(m, &[s1.clone(), s2.clone()])?;
    let key = k_key(&base, m.stratum, &s1, &s2)?;
    let mut undo = m.clone();
    undo.direction = m.direction.flip();
    undo.site = vec![i, j];
    undo.op = None;
    undo.witness = Vec::new();
    Ok(MoveOutcome {
        code: base,
        event: CrossingEvent::new(m.stratum, m.direction, Some(key)),
        undo,
    })
}

fn lambda_create(code: &FrontCode, m: &MoveSpec) -> Result<MoveOutcome> {
    site_len(m, 1)?;
    in_range(code, &m.site, code.arcs.len())?;
    let (out, p) = create_lambda(code, m.site[0], m.rotation, code.fresh_id());
    let mut undo = m.clone();
    undo.direction = Sign::Minus;
    undo.site = vec![p];
    undo.op = None;
    Ok(MoveOutcome {
        code: out,
        event: CrossingEvent::new(Stratum::Lambda, Sign::Plus, None),
        undo,
    })
}

fn lambda_remove(code: &FrontCode, m: &MoveSpec) -> Result<MoveOutcome> {
    site_len(m, 1)?;
    let p = m.site[0];
    in_range(code, &[p + 3], code.events.len())?;
    let id = dp_id(code, p)?;
    let rot = match (slot_at(code, p), code.events[p + 1]) {
        (Some(Slot::First), Event::Cusp { rotation, .. }) => (Sign::Plus, rotation),
        (Some(Slot::Second), Event::Cusp { rotation, .. }) => (Sign::Minus, rotation),
        _ => return Err(Error::InconsistentSite(format!("no swallowtail at {p}"))),
    };
    if rot.0 != rot.1 {
        return Err(Error::InconsistentSite(format!("no swallowtail at {p}")));
    }
    let (base, host) = excise(code, &[p, p + 1, p + 2, p + 3]);
    let (rebuilt, _) = create_lambda(&base, host[0], rot.0, id);
    if !same_up_to_rotation(&rebuilt, code) {
        return Err(Error::InconsistentSite(format!("no swallowtail at {p}")));
    }
    let mut undo = m.clone();
    undo.direction = Sign::Plus;
    undo.rotation = rot.0;
    undo.site = vec![host[0]];
    undo.op = None;
    Ok(MoveOutcome {
        code: base,
        event: CrossingEvent::new(Stratum::Lambda, Sign::Minus, None),
        undo,
    })
}

fn resolve_sign(m: &MoveSpec) -> Result<Sign> {
    match m.triangle {
        Some(t) if triangle_sign(&t) != m.direction => Err(Error::InvalidMove(format!(
            "{} crossing declared {} but its vanishing triangle has sign {}",
            m.stratum.name(),
            m.direction.symbol(),
            triangle_sign(&t).symbol()
        ))),
        _ => Ok(m.direction),
    }
}

fn t_swap(code: &FrontCode, m: &MoveSpec) -> Result<MoveOutcome> {
    site_len(m, 3)?;
    let n = code.events.len();
    let mut ps = m.site.clone();
    ps.sort_unstable();
    in_range(code, &[ps[2] + 1], n)?;
    if ps[1] < ps[0] + 2 || ps[2] < ps[1] + 2 {
        return Err(Error::InconsistentSite("triangle pairs overlap".into()));
    }
    let mut ids = Vec::new();
    for &p in &ps {
        let (a, b) = (dp_id(code, p)?, dp_id(code, p + 1)?);
        if a == b || !code.arcs[p].is_identity() {
            return Err(Error::InconsistentSite(format!("no triangle side at {p}")));
        }
        ids.push(a);
        ids.push(b);
    }
    let mut distinct = ids.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != 3 || distinct.iter().any(|d| ids.iter().filter(|x| *x == d).count() != 2) {
        return Err(Error::InconsistentSite("site pairs do not form a triangle".into()));
    }
    let sign = resolve_sign(m)?;
    let loops = [
        code.arc_product(ps[0], ps[1]),
        code.arc_product(ps[1], ps[2]),
        code.arc_product(ps[2], ps[0]),
    ];
    check_witness(m, &loops)?;
    let key = t_key(&loops[0], &loops[1], &loops[2], Some(maslov(code)))?;
    let mut out = code.clone();
    for &p in &ps {
        out.events.swap(p, p + 1);
    }
    let mut undo = m.clone();
    undo.direction = sign.flip();
    undo.triangle = m.triangle.map(TriangleData::opposite);
    undo.witness = Vec::new();
    Ok(MoveOutcome {
        code: out,
        event: CrossingEvent::new(Stratum::T, sign, Some(key)),
        undo,
    })
}

fn pi_event_key(code: &FrontCode, c: usize, j: usize) -> Result<(ClassKey, [GroupElem; 2])> {
    let rotation = match code.events[c] {
        Event::Cusp { rotation, .. } => rotation,
        _ => return Err(Error::InconsistentSite(format!("event {c} is not a cusp"))),
    };
    let (s1, s2) = (code.arc_product(c, j), code.arc_product(j, c));
    let tag = if rotation == Sign::Plus { 0 } else { 1 };
    Ok((pi_key(&s1, &s2, tag, Some(maslov(code)))?, [s1, s2]))
}

fn pi_create(code: &FrontCode, m: &MoveSpec) -> Result<MoveOutcome> {
    site_len(m, 2)?;
    let n = code.events.len();
    let (c, j) = (m.site[0], m.site[1]);
    in_range(code, &[c, j], n)?;
    if !matches!(code.events[c], Event::Cusp { .. }) {
        return Err(Error::InconsistentSite(format!("event {c} is not a cusp")));
    }
    if j == c || j == (c + n - 1) % n {
        return Err(Error::InconsistentSite("the crossed branch must not be adjacent to the cusp".into()));
    }
    let sign = resolve_sign(m)?;
    let (key, loops) = pi_event_key(code, c, j)?;
    check_witness(m, &loops)?;
    let u = code.fresh_id();
    let (out, c2, q) = create_pi(code, c, j, m.inverse, (u, u + 1));
    let mut undo = m.clone();
    undo.direction = sign.flip();
    undo.op = Some(MoveOp::Remove);
    undo.site = vec![c2, q];
    undo.triangle = m.triangle.map(TriangleData::opposite);
    undo.witness = Vec::new();
    Ok(MoveOutcome {
        code: out,
        event: CrossingEvent::new(Stratum::Pi, sign, Some(key)),
        undo,
    })
}

fn pi_remove(code: &FrontCode, m: &MoveSpec) -> Result<MoveOutcome> {
    site_len(m, 2)?;
    let n = code.events.len();
    let (c, q) = (m.site[0], m.site[1]);
    in_range(code, &[c + 1, q + 1], n)?;
    // the point before the cusp wraps around when the cusp is the basepoint
    let before = (c + n - 1) % n;
    let gone = [before, c + 1, q, q + 1];
    if (0..4).any(|a| (0..a).any(|b| gone[a] == gone[b])) || gone.contains(&c) {
        return Err(Error::InconsistentSite("the inserted points overlap".into()));
    }
    let (u, v) = (dp_id(code, before)?, dp_id(code, c + 1)?);
    let (base, host) = excise(code, &gone);
    let c2 = c - gone.iter().filter(|&&g| g < c).count();
    let j = host[2];
    let bn = base.events.len();
    if bn < 3 || j == c2 || j == (c2 + bn - 1) % bn {
        return Err(Error::InconsistentSite(format!("no cusp crossing at {c}")));
    }
    let (rebuilt, _, _) = create_pi(&base, c2, j, m.inverse, (u, v));
    if !same_up_to_rotation(&rebuilt, code) {
        return Err(Error::InconsistentSite(format!("no cusp crossing at {c}")));
    }
    let sign = resolve_sign(m)?;
    let (key, loops) = pi_event_key(&base, c2, j)?;
    check_witness(m, &loops)?;
    let mut undo = m.clone();
    undo.direction = sign.flip();
    undo.op = Some(MoveOp::Create);
    undo.site = vec![c2, j];
    undo.triangle = m.triangle.map(TriangleData::opposite);
    undo.witness = Vec::new();
    Ok(MoveOutcome {
        code: base,
        event: CrossingEvent::new(Stratum::Pi, sign, Some(key)),
        undo,
    })
}

/// Event loops. Codimension-two kinds carry their witness classes; `Gamma2`
/// carries the crossings of the slide of the orientation-cover lift, which a
/// combinatorial code does not determine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoopKind {
    Gamma1,
    Gamma2(Vec<CrossingEvent>),
    Gamma3,
    /// four T classes
    TT([ClassKey; 4]),
    /// a K class and a Pi class
    KPi(ClassKey, ClassKey),
    /// a K class and a T class
    KT(ClassKey, ClassKey),
    KK(ClassKey, ClassKey),
    /// a T class and two Pi classes
    TPi(ClassKey, ClassKey, ClassKey),
    /// the Pi class of the cusp crossing
    PiLambda(ClassKey),
    PiPi(ClassKey, ClassKey),
    /// the Pi class of the cusp passages
    LambdaLambda(ClassKey),
}

impl LoopKind {
    pub fn name(&self) -> &'static str {
        match self {
            LoopKind::Gamma1 => "Gamma1",
            LoopKind::Gamma2(_) => "Gamma2",
            LoopKind::Gamma3 => "Gamma3",
            LoopKind::TT(_) => "TT",
            LoopKind::KPi(..) => "KPi",
            LoopKind::KT(..) => "KT",
            LoopKind::KK(..) => "KK",
            LoopKind::TPi(..) => "TPi",
            LoopKind::PiLambda(_) => "PiLambda",
            LoopKind::PiPi(..) => "PiPi",
            LoopKind::LambdaLambda(_) => "LambdaLambda",
        }
    }
}

fn stratum_of(k: &ClassKey) -> Stratum {
    match k.family.unrefined() {
        Family::Kplus => Stratum::Kplus,
        Family::Kminus => Stratum::Kminus,
        Family::T => Stratum::T,
        _ => Stratum::Pi,
    }
}

fn pair(k: &ClassKey) -> [CrossingEvent; 2] {
    let e = CrossingEvent::new(stratum_of(k), Sign::Plus, Some(k.clone()));
    let r = e.reversed();
    [e, r]
}

fn expect_family(k: &ClassKey, want: &[Family], loop_name: &str) -> Result<()> {
    if want.contains(&k.family.unrefined()) {
        Ok(())
    } else {
        Err(Error::KeySpaceMismatch(format!("{loop_name} loop cannot carry {}", k.render())))
    }
}

pub fn canned_loop(kind: &LoopKind, code: &FrontCode) -> Result<Vec<CrossingEvent>> {
    use Family::*;
    let name = kind.name();
    let out: Vec<CrossingEvent> = match kind {
        LoopKind::Gamma1 => gamma1(code)?,
        LoopKind::Gamma2(events) => {
            if code.surface.kind != crate::group::SurfaceKind::KleinBottle {
                return Err(Error::UnsupportedLoop(format!("Gamma2 lives on the Klein bottle, not {}", code.surface)));
            }
            if orientation_parity(&global_class(code)) < 0 {
                return Err(Error::UnsupportedLoop("Gamma2 needs an orientation-preserving front".into()));
            }
            events.clone()
        }
        LoopKind::Gamma3 => gamma3(code)?,
        LoopKind::TT(ts) => {
            for t in ts {
                expect_family(t, &[T], name)?;
            }
            ts.iter().flat_map(pair).collect()
        }
        LoopKind::KPi(k, p) | LoopKind::KT(k, p) => {
            expect_family(k, &[Kplus, Kminus], name)?;
            expect_family(p, if name == "KPi" { &[Pi] } else { &[T] }, name)?;
            pair(k).into_iter().chain(pair(p)).collect()
        }
        LoopKind::KK(a, b) => {
            expect_family(a, &[Kplus, Kminus], name)?;
            expect_family(b, &[Kplus, Kminus], name)?;
            pair(a).into_iter().chain(pair(b)).collect()
        }
        LoopKind::TPi(t, p1, p2) => {
            expect_family(t, &[T], name)?;
            expect_family(p1, &[Pi], name)?;
            expect_family(p2, &[Pi], name)?;
            pair(t).into_iter().chain(pair(p1)).chain(pair(p2)).collect()
        }
        LoopKind::PiPi(a, b) => {
            expect_family(a, &[Pi], name)?;
            expect_family(b, &[Pi], name)?;
            pair(a).into_iter().chain(pair(b)).collect()
        }
        LoopKind::PiLambda(p) => {
            expect_family(p, &[Pi], name)?;
            let e = CrossingEvent::new(Stratum::Pi, Sign::Plus, Some(p.clone()));
            let t = CrossingEvent::new(Stratum::T, Sign::Minus, Some(g_map(p)?));
            vec![e.clone(), e, t]
        }
        LoopKind::LambdaLambda(p) => {
            expect_family(p, &[Pi], name)?;
            let l = CrossingEvent::new(Stratum::Lambda, Sign::Plus, None);
            let mut v = vec![l.clone()];
            v.extend(pair(p));
            v.push(l.reversed());
            v
        }
    };
    Ok(out)
}

/// Kink slide: per double point a K+, a K- and a T passage on each branch,
/// per cusp a cancelling pair of cusp passages. On a non-orientable surface
/// the kink returns mirrored after travelling along a reversing loop, which
/// twists the fiber of the second passage.
fn gamma1(code: &FrontCode) -> Result<Vec<CrossingEvent>> {
    let l = global_class(code);
    if orientation_parity(&l) < 0 {
        return Err(Error::UnsupportedLoop("Gamma1 needs an orientation-preserving front".into()));
    }
    let mu = Some(maslov(code));
    let one = code.identity_arc();
    let f = stf_fiber(code, 1);
    let mut out = Vec::new();
    for id in code.double_point_ids() {
        let (a, b) = loop_pair_at(code, id)?;
        let (a2, b2) = if orientation_parity(&a) < 0 {
            (mul(&a, &f), mul(&b, &f.inverse()))
        } else {
            (a.clone(), b.clone())
        };
        let mut push = |st: Stratum, k1: ClassKey, k2: ClassKey| {
            out.push(CrossingEvent::new(st, Sign::Plus, Some(k1)));
            out.push(CrossingEvent::new(st, Sign::Minus, Some(k2)));
        };
        push(Stratum::Kplus, kplus_key(&a, &b, mu)?, kplus_key(&a2, &b2, mu)?);
        if code.surface.orientable() {
            push(Stratum::Kminus, k_key(code, Stratum::Kminus, &a, &b)?, k_key(code, Stratum::Kminus, &a2, &b2)?);
        }
        push(Stratum::T, t_key(&a, &b, &one, mu)?, t_key(&a2, &b2, &one, mu)?);
    }
    for e in &code.events {
        if let Event::Cusp { rotation, .. } = e {
            let tag = if *rotation == Sign::Plus { 0 } else { 1 };
            out.extend(pair(&pi_key(&l, &one, tag, mu)?));
        }
    }
    Ok(out)
}

/// A pair of cusps slides once along the front: at each double point both
/// cusps cross each branch, with opposite signs.
fn gamma3(code: &FrontCode) -> Result<Vec<CrossingEvent>> {
    let mu = Some(maslov(code));
    let one = code.identity_arc();
    let mut out = Vec::new();
    for id in code.double_point_ids() {
        let (a, b) = loop_pair_at(code, id)?;
        out.extend(pair(&pi_key(&a, &b, 0, mu)?));
        out.extend(pair(&pi_key(&b, &a, 0, mu)?));
    }
    if code.cusp_count() == 0 {
        out.extend(pair(&pi_key(&global_class(code), &one, 0, mu)?));
    }
    Ok(out)
}
