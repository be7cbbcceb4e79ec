//! Conjugacy normal forms, roots, fiber-shift indices and centralizers.

use super::klein;
use super::word::{self, Letter};
use super::{orientation_parity, Ambient, GroupElem, SurfaceKind};
use crate::error::{Error, Result};

/// Outcome of a conjugacy test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConjResult {
    /// `t` with `t a t^-1 = b`.
    Witness(GroupElem),
    No,
    Inconclusive(u32),
}

/// Radius for bounded searches; `FRONTWAVE_SEARCH_RADIUS` overrides `default`.
pub fn search_radius(default: u32) -> u32 {
    std::env::var("FRONTWAVE_SEARCH_RADIUS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}

/// Canonical conjugacy data: `conj * a * conj^-1 = rep`; for free and closed
/// kinds also a base root `(y, j)` with `y^j` equal to the base of `rep`.
#[derive(Debug, Clone)]
pub(crate) struct ConjData {
    pub rep: GroupElem,
    pub conj: GroupElem,
    pub root: Option<(Vec<Letter>, i64)>,
}

pub(crate) fn klein_elem(like: &GroupElem, c: (i64, i64, i64)) -> GroupElem {
    let mut w = vec![if c.0 >= 0 { 0 } else { 1 }; c.0.unsigned_abs() as usize];
    w.extend(vec![if c.1 >= 0 { 2 } else { 3 }; c.1.unsigned_abs() as usize]);
    GroupElem::with_word(like.surface(), like.ambient(), w, c.2)
}

pub(crate) fn conj_data(a: &GroupElem) -> ConjData {
    if a.ambient() == Ambient::Cstf {
        let d = conj_data(&a.cstf_stf_part());
        let wrap = |x: &GroupElem| {
            let n = if orientation_parity(x) < 0 { 1 } else { 0 };
            GroupElem::cstf(n, x).expect("parity matches")
        };
        return ConjData {
            rep: GroupElem::cstf(a.cstf_parity(), &d.rep).expect("parity preserved"),
            conj: wrap(&d.conj),
            root: d.root,
        };
    }
    let s = a.surface();
    let id = GroupElem::identity(s, a.ambient());
    match s.kind {
        SurfaceKind::Plane | SurfaceKind::Sphere | SurfaceKind::Torus | SurfaceKind::ProjectivePlane => ConjData {
            rep: a.clone(),
            conj: id,
            root: None,
        },
        SurfaceKind::KleinBottle => {
            let (i, j, k) = klein::coords(a);
            let (rep, conj) = if j.rem_euclid(2) == 0 {
                if i > 0 || (i == 0 && k >= 0) {
                    ((i, j, k), (0, 0, 0))
                } else {
                    ((-i, j, -k), (0, 1, 0))
                }
            } else {
                let (i2, k2) = (i.rem_euclid(2), if a.ambient() == Ambient::Base { 0 } else { k.rem_euclid(2) });
                ((i2, j, k2), ((i2 - i) / 2, 0, (k - k2) / 2))
            };
            ConjData {
                rep: klein_elem(a, rep),
                conj: klein_elem(a, conj),
                root: None,
            }
        }
        SurfaceKind::OrientableFree { .. } => {
            let (rep_w, c) = word::free_conj_canon(a.word());
            let root = (!rep_w.is_empty()).then(|| word::free_root(&rep_w));
            ConjData {
                rep: GroupElem::with_word(s, a.ambient(), rep_w, a.fiber_exp()),
                conj: GroupElem::with_word(s, a.ambient(), c, 0),
                root,
            }
        }
        SurfaceKind::OrientableClosed { .. } => {
            let h = s.hnn().unwrap();
            let bc = h.conj_canon(a.word());
            let c = GroupElem::with_word(s, a.ambient(), bc.conj, 0);
            let rep = a.conj_by(&c).expect("same group");
            ConjData {
                rep,
                conj: c,
                root: bc.root,
            }
        }
    }
}

/// Canonical conjugacy representative and a conjugator `c` with `c a c^-1 = rep`.
pub fn conjugacy_canonical(a: &GroupElem) -> Result<(GroupElem, GroupElem)> {
    let d = conj_data(a);
    Ok((d.rep, d.conj))
}

pub fn is_conjugate(a: &GroupElem, b: &GroupElem) -> Result<ConjResult> {
    if a.surface() != b.surface() || a.ambient() != b.ambient() {
        return Err(Error::AmbientMismatch("conjugacy across different groups".into()));
    }
    let da = conj_data(a);
    let db = conj_data(b);
    if da.rep != db.rep {
        return Ok(ConjResult::No);
    }
    let t = db.conj.inverse().compose(&da.conj)?;
    Ok(ConjResult::Witness(t))
}

fn require_fiber_kind(a: &GroupElem) -> Result<()> {
    if !a.surface().orientable() || a.surface().kind == SurfaceKind::Sphere {
        return Err(Error::UnsupportedSurface(format!(
            "fiber shift index needs an orientable surface other than the sphere, got {}",
            a.surface()
        )));
    }
    if a.ambient() != Ambient::Stf {
        return Err(Error::AmbientMismatch("fiber shift index works in STF".into()));
    }
    Ok(())
}

/// The unique `i` with `a` conjugate to `b f^i`, if the bases are conjugate.
pub fn fiber_shift_index(a: &GroupElem, b: &GroupElem) -> Result<Option<i64>> {
    require_fiber_kind(a)?;
    require_fiber_kind(b)?;
    if a.surface() != b.surface() {
        return Err(Error::AmbientMismatch("different surfaces".into()));
    }
    let ra = conj_data(a).rep;
    let rb = conj_data(b).rep;
    if ra.base() != rb.base() {
        return Ok(None);
    }
    Ok(Some(ra.fiber_exp() - rb.fiber_exp()))
}

/// Generator of the maximal cyclic subgroup containing a nontrivial base element.
pub fn primitive_root(a: &GroupElem) -> Result<(GroupElem, i64)> {
    let s = a.surface();
    let a = a.base();
    match s.kind {
        SurfaceKind::Sphere | SurfaceKind::ProjectivePlane | SurfaceKind::KleinBottle => Err(
            Error::UnsupportedSurface(format!("no maximal cyclic subgroup statement for {s}")),
        ),
        _ if a.is_identity() => Err(Error::TrivialElement),
        SurfaceKind::Plane => Err(Error::TrivialElement),
        SurfaceKind::Torus => {
            let (i, j, _) = a.torus_coords().unwrap();
            let g = gcd(i, j);
            let w = GroupElem::parse(s, Ambient::Base, &format!("a1^{} b1^{}", i / g, j / g))?;
            Ok((w, g))
        }
        SurfaceKind::OrientableFree { .. } => {
            let (r, p) = word::free_root(a.word());
            Ok((GroupElem::with_word(s, Ambient::Base, r, 0), p))
        }
        SurfaceKind::OrientableClosed { .. } => {
            let d = conj_data(&a);
            let (y, j) = d.root.expect("nontrivial element has a root");
            let y = GroupElem::with_word(s, Ambient::Base, y, 0);
            Ok((y.conj_by(&d.conj.inverse())?, j))
        }
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CentralizerType {
    WholeGroup,
    /// Free abelian of the given rank.
    FreeAbelian(u32),
    Cyclic,
}

#[derive(Debug, Clone)]
pub struct CentralizerInfo {
    pub generators: Vec<GroupElem>,
    pub iso: CentralizerType,
    /// Rank of the centralizer when it is abelian.
    pub rank: Option<u32>,
    pub case: &'static str,
}

/// Centralizer of `l` in pi1(STF).
pub fn centralizer_descriptor(l: &GroupElem) -> Result<CentralizerInfo> {
    if l.ambient() != Ambient::Stf {
        return Err(Error::AmbientMismatch("centralizers are computed in STF".into()));
    }
    let s = l.surface();
    let gens = |names: &[&str]| -> Result<Vec<GroupElem>> {
        names.iter().map(|n| GroupElem::parse(s, Ambient::Stf, n)).collect()
    };
    let whole_gens = || -> Result<Vec<GroupElem>> {
        let mut g: Vec<GroupElem> = s
            .generator_names()
            .iter()
            .map(|n| GroupElem::parse(s, Ambient::Stf, n))
            .collect::<Result<_>>()?;
        g.push(GroupElem::parse(s, Ambient::Stf, "f")?);
        Ok(g)
    };
    Ok(match s.kind {
        SurfaceKind::Plane => CentralizerInfo {
            generators: gens(&["f"])?,
            iso: CentralizerType::WholeGroup,
            rank: Some(1),
            case: "abelian",
        },
        SurfaceKind::Sphere | SurfaceKind::ProjectivePlane => CentralizerInfo {
            generators: whole_gens()?,
            iso: CentralizerType::WholeGroup,
            rank: Some(0),
            case: "abelian",
        },
        SurfaceKind::Torus => CentralizerInfo {
            generators: whole_gens()?,
            iso: CentralizerType::WholeGroup,
            rank: Some(3),
            case: "abelian",
        },
        SurfaceKind::KleinBottle => {
            let (i, j, k) = klein::coords(l);
            if j.rem_euclid(2) == 0 && i == 0 && k == 0 {
                CentralizerInfo {
                    generators: whole_gens()?,
                    iso: CentralizerType::WholeGroup,
                    rank: None,
                    case: "a",
                }
            } else if j.rem_euclid(2) == 0 {
                CentralizerInfo {
                    generators: gens(&["c", "d^2", "f"])?,
                    iso: CentralizerType::FreeAbelian(3),
                    rank: Some(3),
                    case: "b",
                }
            } else {
                CentralizerInfo {
                    generators: vec![klein_elem(l, (i, j.signum(), k))],
                    iso: CentralizerType::Cyclic,
                    rank: Some(1),
                    case: "c",
                }
            }
        }
        SurfaceKind::OrientableFree { .. } | SurfaceKind::OrientableClosed { .. } => {
            if l.word().is_empty() {
                CentralizerInfo {
                    generators: whole_gens()?,
                    iso: CentralizerType::WholeGroup,
                    rank: None,
                    case: if l.fiber_exp() == 0 { "trivial" } else { "fiber power" },
                }
            } else {
                let (root, _) = primitive_root(l)?;
                CentralizerInfo {
                    generators: vec![root.lift(Ambient::Stf), GroupElem::parse(s, Ambient::Stf, "f")?],
                    iso: CentralizerType::FreeAbelian(2),
                    rank: Some(2),
                    case: "nontrivial base",
                }
            }
        }
    })
}
