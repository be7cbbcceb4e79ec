//! Integration of weight functions along crossing sequences, the local
//! integrability check, and the verdict on whether a weight function is the
//! derivative of an invariant on a component.

use std::collections::BTreeMap;
use std::fmt;

use crate::classes::{g_map, ClassKey, Family};
use crate::error::{Error, Result};
use crate::front::{global_class, FrontCode};
use crate::group::{orientation_parity, SurfaceKind, SurfaceSpec};
use crate::invariants::half;
use crate::moves::{canned_loop, CrossingEvent, LoopKind};

/// A weight function with values in `Z^dim`; absent keys weigh 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFn {
    surface: SurfaceSpec,
    dim: usize,
    table: BTreeMap<ClassKey, Vec<i64>>,
}

impl WeightFn {
    pub fn new(surface: SurfaceSpec, dim: usize) -> WeightFn {
        WeightFn {
            surface,
            dim,
            table: BTreeMap::new(),
        }
    }

    pub fn surface(&self) -> SurfaceSpec {
        self.surface
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn insert(&mut self, key: ClassKey, value: Vec<i64>) -> Result<()> {
        if key.surface() != self.surface {
            return Err(Error::KeySpaceMismatch(format!(
                "{} is not a class on {}",
                key.render(),
                self.surface
            )));
        }
        if value.len() != self.dim {
            return Err(Error::Semantic(format!(
                "value for {} has {} components, expected {}",
                key.render(),
                value.len(),
                self.dim
            )));
        }
        if value.iter().all(|&v| v == 0) {
            self.table.remove(&key);
        } else {
            self.table.insert(key, value);
        }
        Ok(())
    }

    pub fn with(mut self, key: ClassKey, value: Vec<i64>) -> Result<WeightFn> {
        self.insert(key, value)?;
        Ok(self)
    }

    pub fn keys(&self) -> impl Iterator<Item = &ClassKey> {
        self.table.keys()
    }

    fn has_pi_keys(&self) -> bool {
        self.table.keys().any(|k| k.family.unrefined() == Family::Pi)
    }

    fn exact_or_coarse(&self, key: &ClassKey) -> Option<&Vec<i64>> {
        if let Some(v) = self.table.get(key) {
            return Some(v);
        }
        if key.mu.is_some() {
            let coarse = ClassKey {
                family: key.family.unrefined(),
                mu: None,
                ..key.clone()
            };
            return self.table.get(&coarse);
        }
        None
    }

    /// Value on an event key. A table without cusp classes weighs a cusp
    /// crossing by the triple-point class it degenerates to.
    pub fn value(&self, key: &ClassKey) -> Result<Vec<i64>> {
        if key.surface() != self.surface {
            return Err(Error::KeySpaceMismatch(format!(
                "event class {} does not live on {}",
                key.render(),
                self.surface
            )));
        }
        if let Some(v) = self.exact_or_coarse(key) {
            return Ok(v.clone());
        }
        if key.family.unrefined() == Family::Pi && !self.has_pi_keys() {
            if let Some(v) = self.exact_or_coarse(&g_map(key)?) {
                return Ok(v.clone());
            }
        }
        Ok(vec![0; self.dim])
    }

    /// Lines `<key> <v1> <v2> ...`; `#` starts a comment.
    pub fn parse(surface: SurfaceSpec, text: &str) -> Result<WeightFn> {
        let mut out: Option<WeightFn> = None;
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let close = line.rfind(']').ok_or_else(|| Error::Syntax {
                line: n + 1,
                col: 1,
                msg: "expected a class key `Family[...]`".into(),
            })?;
            let key = ClassKey::parse(surface, &line[..=close])?;
            let value = line[close + 1..]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<i64>().map_err(|_| Error::Syntax {
                        line: n + 1,
                        col: close + 2,
                        msg: format!("`{s}` is not an integer"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            if value.is_empty() {
                return Err(Error::Syntax {
                    line: n + 1,
                    col: close + 2,
                    msg: "missing value".into(),
                });
            }
            let w = out.get_or_insert_with(|| WeightFn::new(surface, value.len()));
            w.insert(key, value)?;
        }
        Ok(out.unwrap_or_else(|| WeightFn::new(surface, 1)))
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.table {
            let vals: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("{} {}\n", k.render(), vals.join(" ")));
        }
        s
    }
}

/// Twice the change of an invariant, so cusp half-weights stay integral.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeltaValue {
    pub doubled: Vec<i64>,
}

impl DeltaValue {
    pub fn zero(dim: usize) -> DeltaValue {
        DeltaValue { doubled: vec![0; dim] }
    }

    pub fn is_zero(&self) -> bool {
        self.doubled.iter().all(|&v| v == 0)
    }

    pub fn plus(&self, o: &DeltaValue) -> DeltaValue {
        DeltaValue {
            doubled: self.doubled.iter().zip(&o.doubled).map(|(a, b)| a + b).collect(),
        }
    }
}

impl fmt::Display for DeltaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.doubled.iter().map(|&v| half(v)).collect();
        if parts.len() == 1 {
            write!(f, "{}", parts[0])
        } else {
            write!(f, "({})", parts.join(", "))
        }
    }
}

pub fn delta_along(events: &[CrossingEvent], psi: &WeightFn) -> Result<DeltaValue> {
    let mut d = DeltaValue::zero(psi.dim());
    for e in events {
        let Some(key) = &e.key else { continue };
        let v = psi.value(key)?;
        for (acc, x) in d.doubled.iter_mut().zip(v) {
            *acc += e.sign.value() * e.weight * x;
        }
    }
    Ok(d)
}

pub fn integrate_along(path: &[CrossingEvent], psi: &WeightFn, base: &DeltaValue) -> Result<DeltaValue> {
    if base.doubled.len() != psi.dim() {
        return Err(Error::KeySpaceMismatch(format!(
            "base value has {} components, weight function {}",
            base.doubled.len(),
            psi.dim()
        )));
    }
    Ok(base.plus(&delta_along(path, psi)?))
}

/// Classes at which the codimension-two loops are instantiated.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LocalWitnesses {
    pub k: Vec<ClassKey>,
    pub t: Vec<ClassKey>,
    pub pi: Vec<ClassKey>,
}

impl LocalWitnesses {
    /// The classes carried by the table, plus triple-point images of its cusp classes.
    pub fn from_weights(w: &WeightFn) -> Result<LocalWitnesses> {
        let mut out = LocalWitnesses::default();
        for key in w.keys() {
            match key.family.unrefined() {
                Family::Kplus | Family::Kminus => out.k.push(key.clone()),
                Family::T => out.t.push(key.clone()),
                _ => {
                    out.pi.push(key.clone());
                    out.t.push(g_map(key)?);
                }
            }
        }
        out.t.sort();
        out.t.dedup();
        Ok(out)
    }

    /// Every loop kind over every combination of witnesses, cycling through
    /// the lists for the multi-class kinds.
    pub fn loops(&self) -> Vec<LoopKind> {
        let mut out = Vec::new();
        let nth = |v: &Vec<ClassKey>, i: usize| v[i % v.len()].clone();
        if !self.t.is_empty() {
            for i in 0..self.t.len() {
                out.push(LoopKind::TT([nth(&self.t, i), nth(&self.t, i + 1), nth(&self.t, i + 2), nth(&self.t, i + 3)]));
            }
        }
        for p in &self.pi {
            out.push(LoopKind::PiLambda(p.clone()));
            out.push(LoopKind::LambdaLambda(p.clone()));
            for q in &self.pi {
                out.push(LoopKind::PiPi(p.clone(), q.clone()));
            }
            for t in &self.t {
                out.push(LoopKind::TPi(t.clone(), p.clone(), nth(&self.pi, 1)));
            }
        }
        for k in &self.k {
            for p in &self.pi {
                out.push(LoopKind::KPi(k.clone(), p.clone()));
            }
            for t in &self.t {
                out.push(LoopKind::KT(k.clone(), t.clone()));
            }
            for k2 in &self.k {
                out.push(LoopKind::KK(k.clone(), k2.clone()));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalReport {
    pub checks: Vec<(LoopKind, DeltaValue)>,
}

impl LocalReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, d)| d.is_zero())
    }

    pub fn failures(&self) -> impl Iterator<Item = &(LoopKind, DeltaValue)> {
        self.checks.iter().filter(|(_, d)| !d.is_zero())
    }
}

pub fn check_local_integrability(chi: &WeightFn, witnesses: &LocalWitnesses, sample: &FrontCode) -> Result<LocalReport> {
    let mut checks = Vec::new();
    for kind in witnesses.loops() {
        let events = canned_loop(&kind, sample)?;
        let d = delta_along(&events, chi)?;
        checks.push((kind, d));
    }
    Ok(LocalReport { checks })
}

/// Which clause of the integrability theorem applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntegrabilityCase {
    /// non-orientable surface, orientation-reversing front
    I,
    /// everything else except case III
    II,
    /// Klein bottle, orientation-preserving front
    III,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LoopName {
    Gamma1,
    Gamma2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Integrable {
        case: IntegrabilityCase,
        gamma1: Option<DeltaValue>,
        gamma2: Option<DeltaValue>,
    },
    NotIntegrable {
        case: IntegrabilityCase,
        failing: LoopName,
        gamma1: DeltaValue,
        gamma2: Option<DeltaValue>,
    },
    /// Delta along gamma1 vanishes, but no lift data was given for gamma2.
    Conditional { case: IntegrabilityCase, gamma1: DeltaValue },
}

impl Verdict {
    pub fn case(&self) -> IntegrabilityCase {
        match self {
            Verdict::Integrable { case, .. } | Verdict::NotIntegrable { case, .. } | Verdict::Conditional { case, .. } => *case,
        }
    }

    pub fn render(&self) -> String {
        let opt = |d: &Option<DeltaValue>| d.as_ref().map(|d| d.to_string()).unwrap_or_else(|| "-".into());
        match self {
            Verdict::Integrable { case, gamma1, gamma2 } => {
                format!("Integrable case={case:?} gamma1={} gamma2={}", opt(gamma1), opt(gamma2))
            }
            Verdict::NotIntegrable {
                case,
                failing,
                gamma1,
                gamma2,
            } => format!("NotIntegrable({failing:?}) case={case:?} gamma1={gamma1} gamma2={}", opt(gamma2)),
            Verdict::Conditional { case, gamma1 } => {
                format!("Conditional(Gamma2 unchecked) case={case:?} gamma1={gamma1} gamma2=-")
            }
        }
    }
}

/// The component of the sample front; `gamma2` carries the crossings of the
/// second Klein bottle loop when the caller knows them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ComponentInfo {
    pub gamma2: Option<Vec<CrossingEvent>>,
}

pub fn integrability_verdict(surface: SurfaceSpec, component: &ComponentInfo, psi: &WeightFn, sample: &FrontCode) -> Result<Verdict> {
    if sample.surface != surface || psi.surface() != surface {
        return Err(Error::UnsupportedSurface(format!(
            "sample lives on {}, weights on {}, requested {}",
            sample.surface,
            psi.surface(),
            surface
        )));
    }
    let reversing = orientation_parity(&global_class(sample)) < 0;
    if reversing {
        return Ok(Verdict::Integrable {
            case: IntegrabilityCase::I,
            gamma1: None,
            gamma2: None,
        });
    }
    let case = if surface.kind == SurfaceKind::KleinBottle {
        IntegrabilityCase::III
    } else {
        IntegrabilityCase::II
    };
    let gamma1 = delta_along(&canned_loop(&LoopKind::Gamma1, sample)?, psi)?;
    if !gamma1.is_zero() {
        let gamma2 = match (&component.gamma2, case) {
            (Some(ev), IntegrabilityCase::III) => Some(delta_along(ev, psi)?),
            _ => None,
        };
        return Ok(Verdict::NotIntegrable {
            case,
            failing: LoopName::Gamma1,
            gamma1,
            gamma2,
        });
    }
    if case == IntegrabilityCase::II {
        return Ok(Verdict::Integrable {
            case,
            gamma1: Some(gamma1),
            gamma2: None,
        });
    }
    let Some(events) = &component.gamma2 else {
        return Ok(Verdict::Conditional { case, gamma1 });
    };
    let gamma2 = delta_along(&canned_loop(&LoopKind::Gamma2(events.clone()), sample)?, psi)?;
    if gamma2.is_zero() {
        Ok(Verdict::Integrable {
            case,
            gamma1: Some(gamma1),
            gamma2: Some(gamma2),
        })
    } else {
        Ok(Verdict::NotIntegrable {
            case,
            failing: LoopName::Gamma2,
            gamma1,
            gamma2: Some(gamma2),
        })
    }
}

/// The event a weight function assigns to one crossing, for reports.
pub fn event_weight(e: &CrossingEvent, psi: &WeightFn) -> Result<DeltaValue> {
    delta_along(std::slice::from_ref(e), psi)
}
