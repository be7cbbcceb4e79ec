//! Group arithmetic for the fundamental groups of a surface F, its unit tangent
//! bundle STF, the projectivized bundle PTF and the parity model of CSTF.

pub mod hnn;
pub mod word;

mod conj;
mod klein;

pub use conj::{
    centralizer_descriptor, conjugacy_canonical, fiber_shift_index, is_conjugate, primitive_root,
    search_radius, CentralizerInfo, CentralizerType, ConjResult,
};
pub use word::Letter;
pub(crate) use conj::{conj_data, klein_elem};

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceKind {
    Plane,
    Sphere,
    Torus,
    OrientableClosed { genus: u32 },
    OrientableFree { rank: u32 },
    ProjectivePlane,
    KleinBottle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceSpec {
    pub kind: SurfaceKind,
}

impl SurfaceSpec {
    pub fn new(kind: SurfaceKind) -> Result<Self> {
        match kind {
            SurfaceKind::OrientableClosed { genus } if genus < 2 => {
                Err(Error::InvalidSurface(format!("closed orientable genus {genus} < 2")))
            }
            SurfaceKind::OrientableFree { rank } if rank < 1 => {
                Err(Error::InvalidSurface("free rank must be at least 1".into()))
            }
            _ => Ok(SurfaceSpec { kind }),
        }
    }

    pub fn plane() -> Self {
        SurfaceSpec { kind: SurfaceKind::Plane }
    }
    pub fn sphere() -> Self {
        SurfaceSpec { kind: SurfaceKind::Sphere }
    }
    pub fn torus() -> Self {
        SurfaceSpec { kind: SurfaceKind::Torus }
    }
    pub fn klein() -> Self {
        SurfaceSpec { kind: SurfaceKind::KleinBottle }
    }
    pub fn projective() -> Self {
        SurfaceSpec { kind: SurfaceKind::ProjectivePlane }
    }
    pub fn closed(genus: u32) -> Result<Self> {
        Self::new(SurfaceKind::OrientableClosed { genus })
    }
    pub fn free(rank: u32) -> Result<Self> {
        Self::new(SurfaceKind::OrientableFree { rank })
    }

    pub fn orientable(&self) -> bool {
        !matches!(self.kind, SurfaceKind::ProjectivePlane | SurfaceKind::KleinBottle)
    }

    /// Abelian fundamental group of STF.
    pub fn abelian(&self) -> bool {
        matches!(
            self.kind,
            SurfaceKind::Plane | SurfaceKind::Sphere | SurfaceKind::Torus | SurfaceKind::ProjectivePlane
        )
    }

    /// Generator names of the base group, in letter order.
    pub fn generator_names(&self) -> Vec<String> {
        match self.kind {
            SurfaceKind::Plane | SurfaceKind::Sphere => vec![],
            SurfaceKind::Torus => vec!["a1".into(), "b1".into()],
            SurfaceKind::OrientableClosed { genus } => (1..=genus)
                .flat_map(|i| [format!("a{i}"), format!("b{i}")])
                .collect(),
            SurfaceKind::OrientableFree { rank } => (1..=rank).map(|i| format!("x{i}")).collect(),
            SurfaceKind::ProjectivePlane => vec!["c".into()],
            SurfaceKind::KleinBottle => vec!["c".into(), "d".into()],
        }
    }

    fn hnn(&self) -> Option<hnn::Hnn> {
        match self.kind {
            SurfaceKind::OrientableClosed { genus } => Some(hnn::Hnn::new(genus as usize)),
            _ => None,
        }
    }

    /// Text form used by file headers: `plane`, `closed genus=2`, `free rank=3`, ...
    pub fn header(&self) -> String {
        match self.kind {
            SurfaceKind::Plane => "plane".into(),
            SurfaceKind::Sphere => "sphere".into(),
            SurfaceKind::Torus => "torus".into(),
            SurfaceKind::OrientableClosed { genus } => format!("closed genus={genus}"),
            SurfaceKind::OrientableFree { rank } => format!("free rank={rank}"),
            SurfaceKind::ProjectivePlane => "projective".into(),
            SurfaceKind::KleinBottle => "klein".into(),
        }
    }
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.header())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ambient {
    /// pi1(F)
    Base,
    /// pi1(STF)
    Stf,
    /// pi1(PTF), orientable surfaces only
    Ptf,
    /// pairs (parity integer, STF element)
    Cstf,
}

/// A group element in normal form. `word` is the base part, `fiber` counts f
/// (STF), h (PTF, half fibers) and is zero in the base group. `parity` is the
/// integer coordinate of the CSTF model and zero elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElem {
    surface: SurfaceSpec,
    ambient: Ambient,
    word: Vec<Letter>,
    fiber: i64,
    parity: i64,
}

impl PartialOrd for GroupElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElem {
    fn cmp(&self, o: &Self) -> Ordering {
        self.surface
            .cmp(&o.surface)
            .then(self.ambient.cmp(&o.ambient))
            .then(self.parity.cmp(&o.parity))
            .then_with(|| word::shortlex(&self.word, &o.word))
            .then(self.fiber.abs().cmp(&o.fiber.abs()))
            .then(o.fiber.cmp(&self.fiber))
    }
}

fn count_exp(w: &[Letter], gen: u16) -> i64 {
    w.iter()
        .filter(|&&l| word::gen_of(l) == gen)
        .map(|&l| if l & 1 == 0 { 1 } else { -1 })
        .sum()
}

fn gen_power(gen: u16, p: i64) -> Vec<Letter> {
    let l = if p >= 0 { 2 * gen } else { 2 * gen + 1 };
    vec![l; p.unsigned_abs() as usize]
}

impl GroupElem {
    pub fn identity(surface: SurfaceSpec, ambient: Ambient) -> Self {
        GroupElem {
            surface,
            ambient,
            word: Vec::new(),
            fiber: 0,
            parity: 0,
        }
    }

    pub fn surface(&self) -> SurfaceSpec {
        self.surface
    }
    pub fn ambient(&self) -> Ambient {
        self.ambient
    }
    pub fn word(&self) -> &[Letter] {
        &self.word
    }
    pub fn fiber_exp(&self) -> i64 {
        self.fiber
    }
    pub fn cstf_parity(&self) -> i64 {
        self.parity
    }
    pub fn is_identity(&self) -> bool {
        self.word.is_empty() && self.fiber == 0 && self.parity == 0
    }
    /// Length used for search heuristics.
    pub fn len(&self) -> usize {
        self.word.len() + self.fiber.unsigned_abs() as usize
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Builds and normalizes an element from a base word and fiber exponent
    /// (the word is read first, then the fiber power).
    pub fn from_parts(surface: SurfaceSpec, ambient: Ambient, w: &[Letter], fiber: i64) -> Result<Self> {
        let ngen = surface.generator_names().len() as u16;
        if w.iter().any(|&l| word::gen_of(l) >= ngen) {
            return Err(Error::UnknownGenerator(format!("letter code out of range for {surface}")));
        }
        if ambient == Ambient::Ptf && !surface.orientable() {
            return Err(Error::UnsupportedSurface("projective bundle model needs an orientable surface".into()));
        }
        let mut e = Self::identity(surface, ambient);
        for &l in w {
            e = e.mul_letter(l);
        }
        let fib = Self::fiber_elem(surface, ambient, fiber)?;
        e.compose(&fib)
    }

    /// The fiber class (f in STF, h in PTF) raised to `k`.
    pub fn fiber_elem(surface: SurfaceSpec, ambient: Ambient, k: i64) -> Result<Self> {
        let mut e = Self::identity(surface, ambient);
        match ambient {
            Ambient::Base => {}
            Ambient::Stf | Ambient::Ptf => e.fiber = k,
            Ambient::Cstf => e.fiber = k,
        }
        Ok(e.normalized())
    }

    /// CSTF element (n, x); requires n even iff x preserves orientation.
    pub fn cstf(n: i64, x: &GroupElem) -> Result<Self> {
        if x.ambient != Ambient::Stf {
            return Err(Error::AmbientMismatch("CSTF model takes an STF element".into()));
        }
        let reversing = orientation_parity(x) < 0;
        if (n.rem_euclid(2) == 1) != reversing {
            return Err(Error::InvalidMove("CSTF parity pairing violated".into()));
        }
        Ok(GroupElem {
            ambient: Ambient::Cstf,
            parity: n,
            ..x.clone()
        })
    }

    /// Central element f1 of the CSTF model.
    pub fn cstf_f1(surface: SurfaceSpec) -> Self {
        GroupElem {
            parity: 2,
            ..Self::identity(surface, Ambient::Cstf)
        }
    }

    /// STF component of a CSTF element.
    pub fn cstf_stf_part(&self) -> GroupElem {
        GroupElem {
            ambient: Ambient::Stf,
            parity: 0,
            ..self.clone()
        }
    }

    fn mul_letter(&self, l: Letter) -> Self {
        let g = GroupElem {
            surface: self.surface,
            ambient: self.ambient,
            word: vec![l],
            fiber: 0,
            parity: if self.ambient == Ambient::Cstf { self.letter_parity(l) } else { 0 },
        }
        .normalized();
        self.compose_unchecked(&g)
    }

    fn letter_parity(&self, l: Letter) -> i64 {
        match self.surface.kind {
            SurfaceKind::KleinBottle if word::gen_of(l) == 1 => 1,
            SurfaceKind::ProjectivePlane => 1,
            _ => 0,
        }
    }

    /// Brings stored data to normal form.
    fn normalized(mut self) -> Self {
        let s = self.surface;
        match s.kind {
            SurfaceKind::Plane => {
                self.word.clear();
            }
            SurfaceKind::Sphere => {
                self.word.clear();
                let m = if self.ambient == Ambient::Ptf { 4 } else { 2 };
                self.fiber = self.fiber.rem_euclid(m);
            }
            SurfaceKind::Torus => {
                let i = count_exp(&self.word, 0);
                let j = count_exp(&self.word, 1);
                self.word = gen_power(0, i);
                self.word.extend(gen_power(1, j));
            }
            SurfaceKind::OrientableFree { .. } => {
                self.word = word::reduce(&self.word);
            }
            SurfaceKind::OrientableClosed { .. } => {
                let h = s.hnn().unwrap();
                let (w, f) = h.normalize(&self.word, 0);
                self.word = w;
                if self.ambient == Ambient::Ptf {
                    self.fiber += 2 * f;
                } else if self.ambient != Ambient::Base {
                    self.fiber += f;
                }
            }
            SurfaceKind::ProjectivePlane => {
                // c^n with n mod 4 (base: mod 2); stored as c^(n mod 2) f^(n div 2)
                let n = count_exp(&self.word, 0) + 2 * self.fiber;
                if self.ambient == Ambient::Base {
                    self.word = gen_power(0, n.rem_euclid(2));
                    self.fiber = 0;
                } else {
                    let n = n.rem_euclid(4);
                    self.word = gen_power(0, n % 2);
                    self.fiber = n / 2;
                }
            }
            SurfaceKind::KleinBottle => {
                let (i, j, k) = klein::coords_of_word(&self.word, self.fiber);
                self.word = gen_power(0, i);
                self.word.extend(gen_power(1, j));
                self.fiber = k;
            }
        }
        if self.ambient == Ambient::Base {
            self.fiber = 0;
        }
        self
    }

    fn same_group(&self, o: &GroupElem) -> Result<()> {
        if self.surface != o.surface || self.ambient != o.ambient {
            return Err(Error::AmbientMismatch(format!(
                "{:?}/{} vs {:?}/{}",
                self.ambient, self.surface, o.ambient, o.surface
            )));
        }
        Ok(())
    }

    pub fn compose(&self, o: &GroupElem) -> Result<GroupElem> {
        self.same_group(o)?;
        Ok(self.compose_unchecked(o))
    }

    fn compose_unchecked(&self, o: &GroupElem) -> GroupElem {
        let s = self.surface;
        let amb = self.ambient;
        let mut out = GroupElem::identity(s, amb);
        out.parity = self.parity + o.parity;
        match s.kind {
            SurfaceKind::KleinBottle => {
                let a = klein::coords(self);
                let b = klein::coords(o);
                let (i, j, k) = klein::mul(a, b);
                out.word = gen_power(0, i);
                out.word.extend(gen_power(1, j));
                out.fiber = if amb == Ambient::Base { 0 } else { k };
                return out;
            }
            SurfaceKind::ProjectivePlane => {
                out.word = self.word.iter().chain(o.word.iter()).copied().collect();
                out.fiber = self.fiber + o.fiber;
                return out.normalized();
            }
            _ => {}
        }
        // orientable kinds: fiber central
        out.word = self.word.iter().chain(o.word.iter()).copied().collect();
        out.fiber = self.fiber + o.fiber;
        out.normalized()
    }

    pub fn inverse(&self) -> GroupElem {
        match self.surface.kind {
            SurfaceKind::KleinBottle => {
                let (i, j, k) = klein::coords(self);
                let (i2, j2, k2) = klein::inv((i, j, k));
                let mut out = GroupElem::identity(self.surface, self.ambient);
                out.word = gen_power(0, i2);
                out.word.extend(gen_power(1, j2));
                out.fiber = if self.ambient == Ambient::Base { 0 } else { k2 };
                out.parity = -self.parity;
                out
            }
            _ => GroupElem {
                surface: self.surface,
                ambient: self.ambient,
                word: word::inverse(&self.word),
                fiber: -self.fiber,
                parity: -self.parity,
            }
            .normalized(),
        }
    }

    /// Idempotent re-normalization; elements are always kept normalized, so
    /// this is the identity on values built through the public API.
    pub fn reduce(&self) -> GroupElem {
        self.clone().normalized()
    }

    pub fn pow(&self, p: i64) -> GroupElem {
        let base = if p < 0 { self.inverse() } else { self.clone() };
        let mut out = GroupElem::identity(self.surface, self.ambient);
        for _ in 0..p.unsigned_abs() {
            out = out.compose_unchecked(&base);
        }
        out
    }

    /// `c * self * c^-1`
    pub fn conj_by(&self, c: &GroupElem) -> Result<GroupElem> {
        c.compose(self)?.compose(&c.inverse())
    }

    /// Projection to the base group.
    pub fn base(&self) -> GroupElem {
        GroupElem {
            surface: self.surface,
            ambient: Ambient::Base,
            word: self.word.clone(),
            fiber: 0,
            parity: 0,
        }
        .normalized()
    }

    /// Lift of a base word with zero fiber into `ambient`.
    pub fn lift(&self, ambient: Ambient) -> GroupElem {
        let mut g = GroupElem::identity(self.surface, ambient);
        for &l in &self.word {
            g = g.mul_letter(l);
        }
        g
    }

    /// Same element viewed in PTF (f = h^2); orientable surfaces only.
    pub fn to_ptf(&self) -> Result<GroupElem> {
        if !self.surface.orientable() {
            return Err(Error::UnsupportedSurface("projective bundle model needs an orientable surface".into()));
        }
        if self.ambient != Ambient::Stf {
            return Err(Error::AmbientMismatch("to_ptf expects an STF element".into()));
        }
        Ok(GroupElem {
            ambient: Ambient::Ptf,
            fiber: 2 * self.fiber,
            ..self.clone()
        }
        .normalized())
    }

    /// Parses whitespace separated generator tokens (`a1`, `b2^-1`, `f^3`, `h`, `1`).
    pub fn parse(surface: SurfaceSpec, ambient: Ambient, text: &str) -> Result<GroupElem> {
        let names = surface.generator_names();
        let mut e = GroupElem::identity(surface, ambient);
        for tok in text.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                Some((n, x)) => (
                    n,
                    x.parse::<i64>().map_err(|_| Error::UnknownGenerator(tok.to_string()))?,
                ),
                None => (tok, 1),
            };
            if name == "1" {
                continue;
            }
            let factor = if name == "f" {
                match ambient {
                    Ambient::Base => return Err(Error::UnknownGenerator(tok.into())),
                    Ambient::Ptf => Self::fiber_elem(surface, ambient, 2 * exp)?,
                    _ => Self::fiber_elem(surface, ambient, exp)?,
                }
            } else if name == "h" {
                if ambient != Ambient::Ptf {
                    return Err(Error::UnknownGenerator(tok.into()));
                }
                Self::fiber_elem(surface, ambient, exp)?
            } else if let Some(gi) = names.iter().position(|n| n == name) {
                let mut g = GroupElem::identity(surface, ambient);
                let l = 2 * gi as Letter;
                for _ in 0..exp.unsigned_abs() {
                    g = g.mul_letter(if exp < 0 { word::inv(l) } else { l });
                }
                g
            } else {
                return Err(Error::UnknownGenerator(tok.to_string()));
            };
            e = e.compose_unchecked(&factor);
        }
        Ok(e)
    }

    /// Token rendering of the normal form; the identity renders as `1`.
    pub fn render(&self) -> String {
        let names = self.surface.generator_names();
        let mut toks: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.word.len() {
            let l = self.word[i];
            let mut run = 1;
            while i + run < self.word.len() && self.word[i + run] == l {
                run += 1;
            }
            let name = &names[word::gen_of(l) as usize];
            let e = if l & 1 == 1 { -(run as i64) } else { run as i64 };
            toks.push(if e == 1 { name.clone() } else { format!("{name}^{e}") });
            i += run;
        }
        if self.fiber != 0 {
            let sym = if self.ambient == Ambient::Ptf { "h" } else { "f" };
            toks.push(if self.fiber == 1 { sym.to_string() } else { format!("{sym}^{}", self.fiber) });
        }
        let body = if toks.is_empty() { "1".to_string() } else { toks.join(" ") };
        if self.ambient == Ambient::Cstf {
            format!("({}; {})", self.parity, body)
        } else {
            body
        }
    }

    /// Klein bottle coordinates (i, j, k) meaning c^i d^j f^k.
    pub fn klein_coords(&self) -> Option<(i64, i64, i64)> {
        (self.surface.kind == SurfaceKind::KleinBottle).then(|| klein::coords(self))
    }

    /// Torus coordinates (i, j, k) meaning a1^i b1^j f^k.
    pub fn torus_coords(&self) -> Option<(i64, i64, i64)> {
        (self.surface.kind == SurfaceKind::Torus)
            .then(|| (count_exp(&self.word, 0), count_exp(&self.word, 1), self.fiber))
    }

    /// Integer exponent-sum vector over base generators.
    pub fn abelianization(&self) -> Vec<i64> {
        (0..self.surface.generator_names().len() as u16)
            .map(|g| count_exp(&self.word, g))
            .collect()
    }

    pub(crate) fn with_word(surface: SurfaceSpec, ambient: Ambient, w: Vec<Letter>, fiber: i64) -> GroupElem {
        GroupElem {
            surface,
            ambient,
            word: w,
            fiber,
            parity: 0,
        }
        .normalized()
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Free function form of the group law.
pub fn compose(a: &GroupElem, b: &GroupElem) -> Result<GroupElem> {
    a.compose(b)
}

pub fn reduce(e: &GroupElem) -> GroupElem {
    e.reduce()
}

/// +1 for orientation-preserving base loops, -1 otherwise.
pub fn orientation_parity(a: &GroupElem) -> i64 {
    let odd = match a.surface.kind {
        SurfaceKind::KleinBottle => count_exp(&a.word, 1).rem_euclid(2) == 1,
        SurfaceKind::ProjectivePlane => count_exp(&a.word, 0).rem_euclid(2) == 1,
        _ => false,
    };
    if odd {
        -1
    } else {
        1
    }
}
