//! Random front codes grown by random stratum crossings, plus triangle
//! gadgets so that T sites exist.
#![allow(dead_code)]

use frontwave::front::{validate, Event, FrontCode, Sign, Slot, XType};
use frontwave::group::{orientation_parity, Ambient, GroupElem, SurfaceSpec};
use frontwave::moves::{apply_move, MoveOutcome, MoveSpec, Stratum};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_elem<R: Rng>(rng: &mut R, s: SurfaceSpec, max_len: usize) -> GroupElem {
    let gens = s.generator_names();
    let mut text = Vec::new();
    for _ in 0..rng.gen_range(0..=max_len) {
        if gens.is_empty() {
            break;
        }
        let g = gens.choose(rng).unwrap();
        text.push(if rng.gen_bool(0.5) { g.clone() } else { format!("{g}^-1") });
    }
    let f = rng.gen_range(-2..=2);
    if f != 0 {
        text.push(format!("f^{f}"));
    }
    GroupElem::parse(s, Ambient::Stf, &text.join(" ")).unwrap()
}

/// A single loop in class `l`, with one cusp if `l` reverses orientation.
pub fn circle(l: GroupElem) -> FrontCode {
    if orientation_parity(&l) < 0 {
        let c = Event::Cusp {
            maslov: Sign::Plus,
            rotation: Sign::Plus,
        };
        return FrontCode::new(l.surface(), vec![c], vec![l]);
    }
    FrontCode::new(l.surface(), vec![], vec![l])
}

/// Three pairwise crossing branches on arcs `i < j < k`, bounding a small
/// triangle. Returns the code and the T site.
pub fn triangle_gadget(code: &FrontCode, i: usize, j: usize, k: usize) -> (FrontCode, [usize; 3]) {
    let one = code.identity_arc();
    let u = code.fresh_id();
    let (v, w) = (u + 1, u + 2);
    let d = |id, slot| Event::DoublePoint {
        id,
        slot,
        xtype: XType::R1,
    };
    let plan = [(i, [d(u, Slot::First), d(v, Slot::First)]), (j, [d(u, Slot::Second), d(w, Slot::First)]), (k, [d(v, Slot::Second), d(w, Slot::Second)])];
    let mut events = Vec::new();
    let mut arcs = Vec::new();
    let mut site = [0; 3];
    for a in 0..code.events.len() {
        events.push(code.events[a]);
        match plan.iter().position(|p| p.0 == a) {
            Some(n) => {
                arcs.push(one.clone());
                site[n] = events.len();
                events.extend(plan[n].1);
                arcs.push(one.clone());
                arcs.push(code.arcs[a].clone());
            }
            None => arcs.push(code.arcs[a].clone()),
        }
    }
    (FrontCode::new(code.surface, events, arcs), site)
}

/// A random applicable creation move, or `None` if the draw did not apply.
pub fn random_move<R: Rng>(rng: &mut R, code: &FrontCode) -> Option<MoveSpec> {
    let n = code.arcs.len();
    let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
    let m = match rng.gen_range(0..5) {
        0 => MoveSpec::new(Stratum::Lambda, Sign::Plus, vec![rng.gen_range(0..n)]).rotation(sign),
        1 | 2 => {
            let st = if rng.gen_bool(0.5) || !code.surface.orientable() {
                Stratum::Kplus
            } else {
                Stratum::Kminus
            };
            let mut s = vec![rng.gen_range(0..n), rng.gen_range(0..n)];
            s.sort_unstable();
            let inverse = rng.gen_bool(0.5);
            let dir = if inverse { Sign::Minus } else { Sign::Plus };
            MoveSpec::new(st, dir, s).inverse(inverse)
        }
        3 => {
            let cusps: Vec<usize> = (0..code.events.len())
                .filter(|&p| matches!(code.events[p], Event::Cusp { .. }))
                .collect();
            let c = *cusps.choose(rng)?;
            MoveSpec::new(Stratum::Pi, sign, vec![c, rng.gen_range(0..n)]).inverse(rng.gen_bool(0.5))
        }
        _ => {
            let site = t_sites(code).choose(rng)?.to_vec();
            MoveSpec::new(Stratum::T, sign, site)
        }
    };
    apply_move(code, &m).ok().map(|_| m)
}

pub fn t_sites(code: &FrontCode) -> Vec<[usize; 3]> {
    let m = code.events.len();
    let pairs: Vec<usize> = (0..m.saturating_sub(1))
        .filter(|&p| {
            matches!((code.events[p], code.events[p + 1]), (Event::DoublePoint { id: a, .. }, Event::DoublePoint { id: b, .. }) if a != b)
                && code.arcs[p].is_identity()
        })
        .collect();
    let mut out = Vec::new();
    for (x, &a) in pairs.iter().enumerate() {
        for (y, &b) in pairs.iter().enumerate().skip(x + 1) {
            for &c in pairs.iter().skip(y + 1) {
                if b >= a + 2 && c >= b + 2 {
                    let s = MoveSpec::new(Stratum::T, Sign::Plus, vec![a, b, c]);
                    if apply_move(code, &s).is_ok() {
                        out.push([a, b, c]);
                    }
                }
            }
        }
    }
    out
}

/// Grows a code by `steps` random moves and occasional triangle gadgets.
pub fn random_code<R: Rng>(rng: &mut R, s: SurfaceSpec, steps: usize) -> FrontCode {
    let mut code = circle(random_elem(rng, s, 3));
    for _ in 0..steps {
        if code.events.len() >= 3 && rng.gen_ratio(1, 6) {
            let mut idx: Vec<usize> = (0..code.events.len()).collect();
            idx.shuffle(rng);
            let mut t = [idx[0], idx[1], idx[2]];
            t.sort_unstable();
            code = triangle_gadget(&code, t[0], t[1], t[2]).0;
            continue;
        }
        if let Some(m) = random_move(rng, &code) {
            code = apply_move(&code, &m).unwrap().code;
        }
    }
    assert!(validate(&code).is_valid(), "{:?}\n{:?}", validate(&code), code);
    code
}

pub fn apply(code: &FrontCode, m: &MoveSpec) -> MoveOutcome {
    apply_move(code, m).unwrap_or_else(|e| panic!("{e}: {m:?} on {code:?}"))
}
