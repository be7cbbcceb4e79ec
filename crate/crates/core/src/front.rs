//! Combinatorial front codes: a cyclic sequence of double-point visits and
//! cusps, with arc labels in pi1(STF).

use crate::error::{Error, Result};
use crate::group::{orientation_parity, Ambient, GroupElem, SurfaceKind, SurfaceSpec};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    First,
    Second,
}

/// Local double-point type. The first slot is the branch of positive
/// handedness; the type records the coorientation sides of the two branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum XType {
    R1,
    R2,
    C1,
    C2,
}

impl XType {
    /// True for R1/C1, whose twist table puts the untwisted pair on the right.
    pub fn is_first_kind(self) -> bool {
        matches!(self, XType::R1 | XType::C1)
    }
    /// The coorientation-reversed partner.
    pub fn reversed(self) -> XType {
        match self {
            XType::R1 => XType::C1,
            XType::C1 => XType::R1,
            XType::R2 => XType::C2,
            XType::C2 => XType::R2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
    pub fn from_value(v: i64) -> Sign {
        if v >= 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Event {
    DoublePoint { id: u32, slot: Slot, xtype: XType },
    Cusp { maslov: Sign, rotation: Sign },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontCode {
    pub surface: SurfaceSpec,
    pub events: Vec<Event>,
    /// `arcs[i]` runs from `events[i]` to `events[i + 1]`; a code without
    /// events has a single arc.
    pub arcs: Vec<GroupElem>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardFrontId {
    pub omega: u32,
    pub k: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    UnpairedDoublePoint { id: u32 },
    DuplicateSlot { id: u32 },
    XTypeMismatch { id: u32 },
    ArcCountMismatch { expected: usize, found: usize },
    ArcAmbient,
    NonPlanarArc,
    ParityMismatch,
    LoopPairInconsistent { id: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnpairedDoublePoint { id } => write!(f, "UnpairedDoublePoint({id})"),
            Violation::DuplicateSlot { id } => write!(f, "DuplicateSlot({id})"),
            Violation::XTypeMismatch { id } => write!(f, "XTypeMismatch({id})"),
            Violation::ArcCountMismatch { expected, found } => {
                write!(f, "ArcCountMismatch(expected {expected}, found {found})")
            }
            Violation::ArcAmbient => write!(f, "ArcAmbient"),
            Violation::NonPlanarArc => write!(f, "NonPlanarArc"),
            Violation::ParityMismatch => write!(f, "ParityMismatch"),
            Violation::LoopPairInconsistent { id } => write!(f, "LoopPairInconsistent({id})"),
        }
    }
}

/// Violations with the event (or arc) index they concern, if any.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<(Option<usize>, Violation)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
    pub fn has(&self, pred: impl Fn(&Violation) -> bool) -> bool {
        self.violations.iter().any(|(_, v)| pred(v))
    }
}

impl FrontCode {
    pub fn new(surface: SurfaceSpec, events: Vec<Event>, arcs: Vec<GroupElem>) -> FrontCode {
        FrontCode { surface, events, arcs }
    }

    pub fn identity_arc(&self) -> GroupElem {
        GroupElem::identity(self.surface, Ambient::Stf)
    }

    pub fn double_point_ids(&self) -> Vec<u32> {
        let mut ids: Vec<u32> = self
            .events
            .iter()
            .filter_map(|e| match e {
                Event::DoublePoint { id, slot: Slot::First, .. } => Some(*id),
                _ => None,
            })
            .collect();
        ids.sort_unstable();
        ids
    }

    pub fn double_point_count(&self) -> usize {
        self.double_point_ids().len()
    }

    pub fn cusp_count(&self) -> usize {
        self.events.iter().filter(|e| matches!(e, Event::Cusp { .. })).count()
    }

    /// Event positions of the first and second visit of `id`.
    pub fn positions(&self, id: u32) -> Result<(usize, usize)> {
        let mut first = None;
        let mut second = None;
        for (i, e) in self.events.iter().enumerate() {
            if let Event::DoublePoint { id: d, slot, .. } = e {
                if *d == id {
                    match slot {
                        Slot::First => first = Some(i),
                        Slot::Second => second = Some(i),
                    }
                }
            }
        }
        match (first, second) {
            (Some(p), Some(q)) => Ok((p, q)),
            _ => Err(Error::UnknownDoublePoint(id)),
        }
    }

    pub fn xtype_of(&self, id: u32) -> Result<XType> {
        let (p, _) = self.positions(id)?;
        match self.events[p] {
            Event::DoublePoint { xtype, .. } => Ok(xtype),
            _ => unreachable!(),
        }
    }

    /// Product of arcs `from, from+1, ..., to-1` taken cyclically; empty
    /// when `from == to`.
    pub fn arc_product(&self, from: usize, to: usize) -> GroupElem {
        let m = self.arcs.len();
        let count = (to + m - from % m) % m;
        let mut acc = self.identity_arc();
        for k in 0..count {
            acc = acc.compose(&self.arcs[(from + k) % m]).expect("arcs share a group");
        }
        acc
    }

    /// Smallest unused double-point id.
    pub fn fresh_id(&self) -> u32 {
        self.double_point_ids().last().map_or(1, |m| m + 1)
    }

    /// Rotates the basepoint forward by `k` events.
    pub fn rotate_basepoint(&self, k: usize) -> FrontCode {
        if self.events.is_empty() {
            return self.clone();
        }
        let m = self.events.len();
        let k = k % m;
        let mut events = self.events[k..].to_vec();
        events.extend_from_slice(&self.events[..k]);
        let mut arcs = self.arcs[k..].to_vec();
        arcs.extend_from_slice(&self.arcs[..k]);
        FrontCode::new(self.surface, events, arcs)
    }
}

/// The classes of the two loops at a double point, based at its first-slot
/// visit: `a` runs from the first visit to the second, `b` back again.
pub fn loop_pair_at(code: &FrontCode, id: u32) -> Result<(GroupElem, GroupElem)> {
    let (p, q) = code.positions(id)?;
    Ok((code.arc_product(p, q), code.arc_product(q, p)))
}

/// Product of all arc labels from the basepoint; defined up to conjugacy.
pub fn global_class(code: &FrontCode) -> GroupElem {
    let mut acc = code.identity_arc();
    for a in &code.arcs {
        acc = acc.compose(a).expect("arcs share a group");
    }
    acc
}

/// Maslov index and, on the plane, the Whitney index.
pub fn indices(code: &FrontCode) -> (i64, Option<i64>) {
    let maslov = code
        .events
        .iter()
        .map(|e| match e {
            Event::Cusp { maslov, .. } => maslov.value(),
            _ => 0,
        })
        .sum();
    let whitney = (code.surface.kind == SurfaceKind::Plane).then(|| global_class(code).fiber_exp());
    (maslov, whitney)
}

pub fn validate(code: &FrontCode) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let expected = code.events.len().max(1);
    if code.arcs.len() != expected {
        rep.violations.push((
            None,
            Violation::ArcCountMismatch {
                expected,
                found: code.arcs.len(),
            },
        ));
        return rep;
    }
    let mut ambient_ok = true;
    for (i, a) in code.arcs.iter().enumerate() {
        if a.ambient() != Ambient::Stf || a.surface() != code.surface {
            ambient_ok = false;
            let v = if code.surface.kind == SurfaceKind::Plane {
                Violation::NonPlanarArc
            } else {
                Violation::ArcAmbient
            };
            rep.violations.push((Some(i), v));
        }
    }
    let mut seen: BTreeMap<u32, (Vec<Slot>, Vec<XType>, usize)> = BTreeMap::new();
    for (i, e) in code.events.iter().enumerate() {
        if let Event::DoublePoint { id, slot, xtype } = e {
            let entry = seen.entry(*id).or_insert((Vec::new(), Vec::new(), i));
            entry.0.push(*slot);
            entry.1.push(*xtype);
        }
    }
    let mut pairs_ok = true;
    for (id, (slots, types, idx)) in &seen {
        if slots.len() != 2 {
            pairs_ok = false;
            rep.violations.push((Some(*idx), Violation::UnpairedDoublePoint { id: *id }));
        } else if slots[0] == slots[1] {
            pairs_ok = false;
            rep.violations.push((Some(*idx), Violation::DuplicateSlot { id: *id }));
        } else if types[0] != types[1] {
            rep.violations.push((Some(*idx), Violation::XTypeMismatch { id: *id }));
        }
    }
    if !ambient_ok {
        return rep;
    }
    let l = global_class(code);
    let even = code.cusp_count() % 2 == 0;
    if (orientation_parity(&l) > 0) != even {
        rep.violations.push((None, Violation::ParityMismatch));
    }
    if pairs_ok {
        for id in code.double_point_ids() {
            let (p, _) = code.positions(id).expect("paired");
            let (a, b) = loop_pair_at(code, id).expect("paired");
            let prefix = code.arc_product(0, p);
            let rotated = if p == 0 { l.clone() } else { l.conj_by(&prefix.inverse()).expect("same group") };
            if a.compose(&b).expect("same group") != rotated {
                rep.violations.push((Some(p), Violation::LoopPairInconsistent { id }));
            }
        }
    }
    rep
}

/// Abstract planar standard front: `omega - 1` kinks (a figure eight when
/// `omega = 0`) followed by `k` cusp pairs of opposite Maslov sign.
pub fn standard_code(id: StandardFrontId) -> FrontCode {
    let s = SurfaceSpec::plane();
    let f = |k: i64| GroupElem::fiber_elem(s, Ambient::Stf, k).expect("planar fiber");
    let mut items: Vec<(Event, GroupElem)> = Vec::new();
    let mut closing = 1;
    if id.omega == 0 {
        items.push((
            Event::DoublePoint {
                id: 1,
                slot: Slot::First,
                xtype: XType::R1,
            },
            f(1),
        ));
        items.push((
            Event::DoublePoint {
                id: 1,
                slot: Slot::Second,
                xtype: XType::R1,
            },
            f(-1),
        ));
        closing = 0;
    } else {
        for d in 1..id.omega {
            items.push((
                Event::DoublePoint {
                    id: d,
                    slot: Slot::First,
                    xtype: XType::R1,
                },
                f(1),
            ));
            items.push((
                Event::DoublePoint {
                    id: d,
                    slot: Slot::Second,
                    xtype: XType::R1,
                },
                f(0),
            ));
        }
    }
    for _ in 0..id.k {
        items.push((
            Event::Cusp {
                maslov: Sign::Plus,
                rotation: Sign::Plus,
            },
            f(0),
        ));
        items.push((
            Event::Cusp {
                maslov: Sign::Minus,
                rotation: Sign::Minus,
            },
            f(0),
        ));
    }
    if items.is_empty() {
        return FrontCode::new(s, vec![], vec![f(closing)]);
    }
    let last = items.len() - 1;
    items[last].1 = items[last].1.compose(&f(closing)).expect("planar");
    let (events, arcs) = items.into_iter().unzip();
    FrontCode::new(s, events, arcs)
}
