//! Planar St', J+, J- from base values and crossings, and the module-valued
//! I+ of fronts on orientable surfaces.

use std::collections::BTreeMap;
use std::fmt;

use crate::classes::{kplus_key, ClassKey};
use crate::error::{Error, Result};
use crate::front::{global_class, loop_pair_at, Event, FrontCode, Sign, StandardFrontId, XType};
use crate::group::{Ambient, GroupElem};
use crate::moves::{CrossingEvent, Stratum};

/// Formal integer combination of K+ classes, stored with doubled coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ModuleVector {
    terms: BTreeMap<ClassKey, i64>,
}

impl ModuleVector {
    pub fn zero() -> ModuleVector {
        ModuleVector::default()
    }

    /// Adds `doubled / 2` times `key`.
    pub fn add_term(&mut self, key: ClassKey, doubled: i64) {
        let c = self.terms.entry(key).or_insert(0);
        *c += doubled;
        if *c == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn add(&mut self, other: &ModuleVector) {
        for (k, &v) in &other.terms {
            self.add_term(k.clone(), v);
        }
    }

    pub fn scaled(&self, s: i64) -> ModuleVector {
        let mut out = ModuleVector::zero();
        for (k, &v) in &self.terms {
            out.add_term(k.clone(), v * s);
        }
        out
    }

    pub fn sub(&self, other: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.add(&other.scaled(-1));
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Doubled coefficient of `key`.
    pub fn doubled(&self, key: &ClassKey) -> i64 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ClassKey, i64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// One `coeff * key` line per term, sorted by key.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.terms() {
            out.push_str(&format!("{} * {}\n", half(v), k.render()));
        }
        out
    }
}

impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}", self.render().trim_end())
    }
}

/// Renders a doubled value exactly, e.g. 3 -> "3/2".
pub fn half(doubled: i64) -> String {
    if doubled % 2 == 0 {
        format!("{}", doubled / 2)
    } else {
        format!("{doubled}/2")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlanarInvariant {
    Stp,
    Jplus,
    Jminus,
}

impl PlanarInvariant {
    pub fn name(self) -> &'static str {
        match self {
            PlanarInvariant::Stp => "St'",
            PlanarInvariant::Jplus => "J+",
            PlanarInvariant::Jminus => "J-",
        }
    }
}

/// Doubled value on the standard front `K_{omega,k}`.
pub fn planar_base_value(inv: PlanarInvariant, id: StandardFrontId) -> i64 {
    let k = id.k as i64;
    if id.omega == 0 {
        return match inv {
            PlanarInvariant::Stp => k,
            PlanarInvariant::Jplus => -2 * k,
            PlanarInvariant::Jminus => -2,
        };
    }
    let w = id.omega as i64 - 1;
    match inv {
        PlanarInvariant::Stp => 2 * w + k,
        PlanarInvariant::Jplus => -4 * w - 2 * k,
        PlanarInvariant::Jminus => -6 * w,
    }
}

/// Doubled change of `inv` under one crossing.
pub fn planar_jump(inv: PlanarInvariant, e: &CrossingEvent) -> i64 {
    let s = e.sign.value();
    match (inv, e.stratum) {
        (PlanarInvariant::Stp, Stratum::T | Stratum::Pi) => s * e.weight,
        (PlanarInvariant::Jplus, Stratum::Kplus) => 4 * s,
        (PlanarInvariant::Jminus, Stratum::Kminus) => 4 * s,
        _ => 0,
    }
}

/// Doubled value after following `path` from `K_{omega,k}`.
pub fn planar_invariant(inv: PlanarInvariant, id: StandardFrontId, path: &[CrossingEvent]) -> i64 {
    planar_base_value(inv, id) + path.iter().map(|e| planar_jump(inv, e)).sum::<i64>()
}

fn fiber(like: &GroupElem, k: i64) -> Result<GroupElem> {
    GroupElem::fiber_elem(like.surface(), Ambient::Stf, k)
}

fn cls(a: &GroupElem, b: &GroupElem) -> Result<ClassKey> {
    kplus_key(a, b, None)
}

fn require_orientable(code: &FrontCode) -> Result<()> {
    if code.surface.orientable() {
        Ok(())
    } else {
        Err(Error::UnsupportedSurface(format!(
            "I+ is defined here for orientable surfaces only, got {}",
            code.surface
        )))
    }
}

/// The right and left smoothing classes at a double point with loop pair
/// `(a, b)`. Cusp-adjacent types reuse the table of the regular ones.
fn smoothings(x: XType, a: &GroupElem, b: &GroupElem) -> Result<(ClassKey, ClassKey)> {
    let f = fiber(a, 1)?;
    let fi = fiber(a, -1)?;
    let twisted_down = cls(&a.compose(&f)?, &b.compose(&fi)?)?;
    let twisted_up = cls(&a.compose(&fi)?, &b.compose(&f)?)?;
    Ok(if x.is_first_kind() {
        (cls(a, b)?, twisted_down)
    } else {
        (twisted_up, cls(a, b)?)
    })
}

pub fn iplus(code: &FrontCode) -> Result<ModuleVector> {
    require_orientable(code)?;
    let mut out = ModuleVector::zero();
    for id in code.double_point_ids() {
        let (a, b) = loop_pair_at(code, id)?;
        let (r, l) = smoothings(code.xtype_of(id)?, &a, &b)?;
        out.add_term(r, 2);
        out.add_term(l, -2);
    }
    let (mut minus, mut plus) = (0, 0);
    for e in &code.events {
        if let Event::Cusp { rotation, .. } = e {
            match rotation {
                Sign::Plus => plus += 1,
                Sign::Minus => minus += 1,
            }
        }
    }
    if plus + minus > 0 {
        let l = global_class(code);
        let one = code.identity_arc();
        let f = fiber(&l, 1)?;
        let fi = fiber(&l, -1)?;
        let base = cls(&l, &one)?;
        out.add_term(base.clone(), -minus - plus);
        out.add_term(cls(&l.compose(&f)?, &fi)?, minus);
        out.add_term(cls(&l.compose(&fi)?, &f)?, plus);
    }
    Ok(out)
}

/// Change of I+ across a positive K+ crossing with loop pair `(s1, s2)`.
pub fn iplus_delta(s1: &GroupElem, s2: &GroupElem) -> Result<ModuleVector> {
    if !s1.surface().orientable() {
        return Err(Error::UnsupportedSurface(format!(
            "I+ is defined here for orientable surfaces only, got {}",
            s1.surface()
        )));
    }
    let f = fiber(s1, 1)?;
    let fi = fiber(s1, -1)?;
    let mut out = ModuleVector::zero();
    out.add_term(cls(s1, s2)?, 4);
    out.add_term(cls(&s1.compose(&f)?, &s2.compose(&fi)?)?, -2);
    out.add_term(cls(&s1.compose(&fi)?, &s2.compose(&f)?)?, -2);
    Ok(out)
}
