//! Isomorphism types of the homotopy groups of the space of fronts, read off
//! from the class of the front.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{orientation_parity, Ambient, GroupElem, SurfaceKind, SurfaceSpec};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupDescriptor {
    Trivial,
    /// free abelian of rank n >= 1
    Z(u32),
    /// cyclic of order m >= 2
    Cyclic(u32),
    Pi1Stk,
    /// pi1 of the unit tangent bundle of a surface with no closed-form name
    Pi1Stf(SurfaceSpec),
    /// Index-two subgroup of `Z (+) G` with odd first coordinate exactly
    /// over orientation-reversing elements.
    Idx2(Box<GroupDescriptor>),
    Sum(Vec<GroupDescriptor>),
    /// pi_n of the two-sphere, left symbolic
    PiNSphere(u32),
}

use GroupDescriptor as G;

impl GroupDescriptor {
    pub fn sum(parts: Vec<GroupDescriptor>) -> GroupDescriptor {
        let mut flat = Vec::new();
        let mut rank = 0;
        let mut z_at = None;
        for p in parts {
            let inner = match p {
                G::Sum(v) => v,
                other => vec![other],
            };
            for q in inner {
                match q {
                    G::Trivial => {}
                    G::Z(n) => {
                        rank += n;
                        z_at.get_or_insert(flat.len());
                    }
                    G::Sum(_) => unreachable!("sums are normalized"),
                    other => flat.push(other),
                }
            }
        }
        if let Some(i) = z_at {
            flat.insert(i, G::Z(rank));
        }
        match flat.len() {
            0 => G::Trivial,
            1 => flat.pop().unwrap(),
            _ => G::Sum(flat),
        }
    }

    /// Rank of the free abelian part, when the group is abelian.
    pub fn abelian_rank(&self) -> Option<u32> {
        match self {
            G::Trivial | G::Cyclic(_) => Some(0),
            G::Z(n) => Some(*n),
            G::Sum(v) => v.iter().map(|g| g.abelian_rank()).sum(),
            _ => None,
        }
    }

    pub fn render(&self) -> String {
        match self {
            G::Trivial => "0".into(),
            G::Z(1) => "Z".into(),
            G::Z(n) => format!("Z^{n}"),
            G::Cyclic(m) => format!("Z_{m}"),
            G::Pi1Stk => "pi1STK".into(),
            G::Pi1Stf(s) => format!("pi1STF[{s}]"),
            G::Idx2(g) => format!("Idx2({})", g.render()),
            G::Sum(v) => v.iter().map(|g| g.render()).collect::<Vec<_>>().join(" (+) "),
            G::PiNSphere(n) => format!("pi{n}S2"),
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// pi1 of the unit tangent bundle, by name where one exists.
pub fn pi1_stf(surface: SurfaceSpec) -> GroupDescriptor {
    match surface.kind {
        SurfaceKind::Plane => G::Z(1),
        SurfaceKind::Sphere => G::Cyclic(2),
        SurfaceKind::ProjectivePlane => G::Cyclic(4),
        SurfaceKind::Torus => G::Z(3),
        SurfaceKind::KleinBottle => G::Pi1Stk,
        _ => G::Pi1Stf(surface),
    }
}

/// What the descriptors need to know about a front. Either give `l`, or the
/// flags, or both; given flags must agree with what `l` implies.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrontClassData {
    pub l: Option<GroupElem>,
    /// the front is null-homotopic in the surface
    pub base_trivial: Option<bool>,
    pub preserving: Option<bool>,
    /// Klein bottle: l is an even power of an orientation-reversing element
    pub even_power_of_reversing: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Flags {
    base_trivial: bool,
    preserving: bool,
    even_power_of_reversing: bool,
}

impl FrontClassData {
    pub fn of(l: GroupElem) -> FrontClassData {
        FrontClassData {
            l: Some(l),
            ..Default::default()
        }
    }

    fn resolve(&self, surface: SurfaceSpec) -> Result<Flags> {
        let computed = match &self.l {
            Some(l) => {
                if l.surface() != surface || l.ambient() != Ambient::Stf {
                    return Err(Error::AmbientMismatch(format!(
                        "front class must live in pi1(STF) of {surface}"
                    )));
                }
                Some(Flags {
                    base_trivial: l.base().is_identity(),
                    preserving: orientation_parity(l) > 0,
                    even_power_of_reversing: klein_even_power_of_reversing(l),
                })
            }
            None => None,
        };
        let pick = |given: Option<bool>, derived: Option<bool>, name: &str| -> Result<bool> {
            match (given, derived) {
                (Some(g), Some(d)) if g != d => Err(Error::Semantic(format!(
                    "flag {name}={g} contradicts the given class"
                ))),
                (_, Some(d)) => Ok(d),
                (Some(g), None) => Ok(g),
                (None, None) => Err(Error::Semantic(format!("missing flag {name}"))),
            }
        };
        let c = computed;
        let base_trivial = if surface.orientable() {
            pick(self.base_trivial, c.map(|f| f.base_trivial), "base_trivial")?
        } else {
            false
        };
        let preserving = if surface.orientable() {
            pick(self.preserving, Some(true), "preserving")?
        } else {
            pick(self.preserving, c.map(|f| f.preserving), "preserving")?
        };
        let even_power_of_reversing = if surface.kind == SurfaceKind::KleinBottle && preserving {
            pick(self.even_power_of_reversing, c.map(|f| f.even_power_of_reversing), "even_power_of_reversing")?
        } else {
            false
        };
        Ok(Flags {
            base_trivial,
            preserving,
            even_power_of_reversing,
        })
    }
}

/// On the Klein bottle every reversing `b = c^i d^j f^k` squares to `d^{2j}`,
/// so the even powers of reversing elements are exactly the `d^{2n}`.
fn klein_even_power_of_reversing(l: &GroupElem) -> bool {
    matches!(l.klein_coords(), Some((0, j, 0)) if j % 2 == 0)
}

pub fn pi1_front_space(surface: SurfaceSpec, front: &FrontClassData) -> Result<GroupDescriptor> {
    match surface.kind {
        SurfaceKind::Sphere | SurfaceKind::ProjectivePlane => return Ok(G::sum(vec![G::Z(1), G::Cyclic(2)])),
        SurfaceKind::Torus => return Ok(G::Z(4)),
        // every front on the plane is null-homotopic
        SurfaceKind::Plane => return Ok(G::sum(vec![G::Z(1), pi1_stf(surface)])),
        _ => {}
    }
    let fl = front.resolve(surface)?;
    Ok(match surface.kind {
        SurfaceKind::Sphere | SurfaceKind::ProjectivePlane | SurfaceKind::Torus | SurfaceKind::Plane => unreachable!("handled above"),
        SurfaceKind::OrientableClosed { .. } | SurfaceKind::OrientableFree { .. } => {
            if fl.base_trivial {
                G::sum(vec![G::Z(1), pi1_stf(surface)])
            } else {
                G::Z(3)
            }
        }
        SurfaceKind::KleinBottle => match (fl.preserving, fl.even_power_of_reversing) {
            (false, _) => G::Z(2),
            (true, true) => G::sum(vec![G::Z(1), G::Pi1Stk]),
            (true, false) => G::Z(4),
        },
    })
}

pub fn pi_n_front_space(surface: SurfaceSpec, n: u32) -> Result<GroupDescriptor> {
    if n < 2 {
        return Err(Error::Semantic(format!("pi_{n} is not a higher homotopy group")));
    }
    Ok(match surface.kind {
        SurfaceKind::Sphere | SurfaceKind::ProjectivePlane if n == 2 => G::Z(1),
        SurfaceKind::Sphere | SurfaceKind::ProjectivePlane => G::sum(vec![G::PiNSphere(n), G::PiNSphere(n + 1)]),
        _ => G::Trivial,
    })
}

pub fn pi1_cstf_descriptor(surface: SurfaceSpec) -> Result<GroupDescriptor> {
    Ok(G::Idx2(Box::new(G::sum(vec![G::Z(1), pi1_stf(surface)]))))
}
