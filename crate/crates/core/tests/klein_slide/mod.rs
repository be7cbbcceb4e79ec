//! The second Klein bottle loop, simulated from geometry.
//!
//! The Klein bottle is the plane modulo `c: (x, y) -> (x, y + 1)` and
//! `d: (x, y) -> (x + 1/2, -y)`; the unit tangent bundle is the plane times
//! the angle line modulo the same maps acting on coorienting normals, with
//! `f` turning the angle once. A front is the image of a closed curve `L'` on
//! the torus cover. The loop slides `L'` by `t` along `c`, so the
//! d-translates of the lift move against it with relative speed two; its
//! crossings are tangencies and triple points between the two families.
#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use frontwave::classes::{kplus_key, t_key};
use frontwave::front::{Event, FrontCode, Sign, Slot, XType};
use frontwave::group::{Ambient, GroupElem, SurfaceSpec};
use frontwave::moves::{CrossingEvent, Stratum};

/// `c^i d^j f^k`
pub type Deck = (i64, i64, i64);

fn par(j: i64) -> i64 {
    if j.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn mul(a: Deck, b: Deck) -> Deck {
    (a.0 + par(a.1) * b.0, a.1 + b.1, par(b.1) * a.2 + b.2)
}

pub fn inv(a: Deck) -> Deck {
    (-par(a.1) * a.0, -a.1, -par(a.1) * a.2)
}

/// Action on (x, y, angle of the normal).
pub fn act(g: Deck, p: (f64, f64, f64)) -> (f64, f64, f64) {
    let s = par(g.1) as f64;
    (p.0 + g.1 as f64 / 2.0, s * p.1 + g.0 as f64, s * (p.2 + TAU * g.2 as f64))
}

fn act_pt(g: Deck, p: (f64, f64)) -> (f64, f64) {
    let q = act(g, (p.0, p.1, 0.0));
    (q.0, q.1)
}

/// Differential of a deck map on vectors.
fn dvec(g: Deck, v: (f64, f64)) -> (f64, f64) {
    (v.0, par(g.1) as f64 * v.1)
}

pub fn elem(g: Deck) -> GroupElem {
    GroupElem::parse(SurfaceSpec::klein(), Ambient::Stf, &format!("c^{} d^{} f^{}", g.0, g.1, g.2)).unwrap()
}

/// The deck element carrying the fundamental domain `[0, 1/2) x [0, 1) x
/// [-pi, pi)` onto the cell containing `p`.
fn cell(p: (f64, f64, f64)) -> Deck {
    let j = (2.0 * p.0).floor() as i64;
    let i = if j.rem_euclid(2) == 0 { p.1.floor() } else { p.1.ceil() } as i64;
    let base = (i, j, 0);
    let q = act(inv(base), p);
    let k = ((q.2 + PI) / TAU).floor() as i64;
    (i, j, k)
}

fn dot(a: (f64, f64), b: (f64, f64)) -> f64 {
    a.0 * b.0 + a.1 * b.1
}

fn det(a: (f64, f64), b: (f64, f64)) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

fn rot(v: (f64, f64)) -> (f64, f64) {
    (-v.1, v.0)
}

/// `P s + sum_k a_k cos(2 pi k s) + b_k sin(2 pi k s)`, `k` from 0.
#[derive(Debug, Clone)]
pub struct Series {
    pub lin: f64,
    pub coef: Vec<(f64, f64)>,
}

impl Series {
    fn eval(&self, s: f64, order: u32) -> f64 {
        let mut v = match order {
            0 => self.lin * s,
            1 => self.lin,
            _ => 0.0,
        };
        for (k, &(a, b)) in self.coef.iter().enumerate() {
            let w = TAU * k as f64;
            let (c, sn) = ((w * s).cos(), (w * s).sin());
            v += match order {
                0 => a * c + b * sn,
                1 => w * (-a * sn + b * c),
                _ => w * w * (-a * c - b * sn),
            };
        }
        v
    }
}

/// A closed curve on the torus cover with its lift to the plane; one period
/// translates by `(x, y)` lattice steps, i.e. by `c^y d^(2x)`.
#[derive(Debug, Clone)]
pub struct Curve {
    pub x: Series,
    pub y: Series,
    /// lifted normal angle on a fine grid, for unwrapping
    angles: Vec<f64>,
}

const GRID: usize = 4096;

impl Curve {
    pub fn new(x: Series, y: Series) -> Curve {
        let mut c = Curve { x, y, angles: Vec::new() };
        let mut prev: Option<f64> = None;
        for n in 0..=GRID {
            let s = n as f64 / GRID as f64;
            let raw = c.raw_angle(s);
            let a = match prev {
                None => raw,
                Some(p) => raw + TAU * ((p - raw) / TAU).round(),
            };
            c.angles.push(a);
            prev = Some(a);
        }
        c
    }

    pub fn pos(&self, s: f64) -> (f64, f64) {
        (self.x.eval(s, 0), self.y.eval(s, 0))
    }
    pub fn vel(&self, s: f64) -> (f64, f64) {
        (self.x.eval(s, 1), self.y.eval(s, 1))
    }
    pub fn acc(&self, s: f64) -> (f64, f64) {
        (self.x.eval(s, 2), self.y.eval(s, 2))
    }
    pub fn normal(&self, s: f64) -> (f64, f64) {
        let n = rot(self.vel(s));
        let r = dot(n, n).sqrt();
        (n.0 / r, n.1 / r)
    }
    fn raw_angle(&self, s: f64) -> f64 {
        let n = self.normal(s);
        n.1.atan2(n.0)
    }

    /// Continuous normal angle for `s` in `[0, 1]`.
    pub fn angle(&self, s: f64) -> f64 {
        let n = ((s * GRID as f64).round() as usize).min(GRID);
        let raw = self.raw_angle(s);
        raw + TAU * ((self.angles[n] - raw) / TAU).round()
    }

    /// Class of one period: `c^Q d^(2P) f^W`.
    pub fn class(&self) -> Deck {
        let w = ((self.angles[GRID] - self.angles[0]) / TAU).round() as i64;
        (self.y.lin.round() as i64, 2 * self.x.lin.round() as i64, w)
    }

    /// Position at time `t` of the slide.
    pub fn pos_at(&self, s: f64, t: f64) -> (f64, f64) {
        let p = self.pos(s);
        (p.0, p.1 + t)
    }

    /// Lift of the point at `s`, time `t`, into the plane times the angle line.
    pub fn lift(&self, s: f64, t: f64) -> (f64, f64, f64) {
        let p = self.pos_at(s, t);
        (p.0, p.1, self.angle(s))
    }
}

/// Reduces a parameter into `[0, 1)`, returning the reduced value and `m`
/// with `s = s0 + m`.
fn reduce(s: f64) -> (f64, i64) {
    let m = s.floor();
    (s - m, m as i64)
}

/// A double point of the front at one time: `pos(s) = g pos(u)`, `s < u`.
#[derive(Debug, Clone, Copy)]
pub struct Crossing {
    pub s: f64,
    pub u: f64,
    pub g: Deck,
}

fn bbox(c: &Curve, n: usize) -> (f64, f64, f64, f64) {
    let mut b = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for k in 0..=n {
        let p = c.pos(k as f64 / n as f64);
        b = (b.0.min(p.0), b.1.max(p.0), b.2.min(p.1), b.3.max(p.1));
    }
    b
}

/// Deck elements (no fiber) whose image of one period can meet it; the
/// identity gives the self-crossings of `L'`.
fn candidates(c: &Curve, t: f64) -> Vec<Deck> {
    let (x0, x1, y0, y1) = bbox(c, 512);
    let (y0, y1) = (y0 + t, y1 + t);
    let w = x1 - x0 + 1.0;
    let h = y1 - y0 + 1.0;
    let mut out = Vec::new();
    let jr = (2.0 * w).ceil() as i64 + 1;
    let ir = (y1.abs().max(y0.abs()) * 2.0 + h).ceil() as i64 + 1;
    for j in -jr..=jr {
        for i in -ir..=ir {
            let g = (i, j, 0);
            let (gx0, gx1) = (x0 + j as f64 / 2.0, x1 + j as f64 / 2.0);
            let (a, b) = (act_pt(g, (0.0, y0)).1, act_pt(g, (0.0, y1)).1);
            let (gy0, gy1) = (a.min(b), a.max(b));
            if gx0 <= x1 + 1e-9 && x0 <= gx1 + 1e-9 && gy0 <= y1 + 1e-9 && y0 <= gy1 + 1e-9 {
                out.push(g);
            }
        }
    }
    out
}

fn seg_hit(p: (f64, f64), q: (f64, f64), r: (f64, f64), s: (f64, f64)) -> Option<(f64, f64)> {
    let d1 = (q.0 - p.0, q.1 - p.1);
    let d2 = (s.0 - r.0, s.1 - r.1);
    let den = det(d1, d2);
    if den.abs() < 1e-15 {
        return None;
    }
    let w = (r.0 - p.0, r.1 - p.1);
    let a = det(w, d2) / den;
    let b = det(w, d1) / den;
    ((0.0..1.0).contains(&a) && (0.0..1.0).contains(&b)).then_some((a, b))
}

/// Newton on `pos_t(s) - g pos_t(u) = 0`.
fn refine(c: &Curve, t: f64, g: Deck, mut s: f64, mut u: f64) -> Option<(f64, f64)> {
    for _ in 0..60 {
        let a = c.pos_at(s, t);
        let b = act_pt(g, c.pos_at(u, t));
        let r = (a.0 - b.0, a.1 - b.1);
        if dot(r, r).sqrt() < 1e-13 {
            return Some((s, u));
        }
        let j1 = c.vel(s);
        let j2 = dvec(g, c.vel(u));
        let den = det(j1, (-j2.0, -j2.1));
        if den.abs() < 1e-14 {
            return None;
        }
        // solve [j1, -j2] (ds, du) = -r
        let ds = det((-r.0, -r.1), (-j2.0, -j2.1)) / den;
        let du = det(j1, (-r.0, -r.1)) / den;
        s += ds;
        u += du;
    }
    let a = c.pos_at(s, t);
    let b = act_pt(g, c.pos_at(u, t));
    ((a.0 - b.0).abs() + (a.1 - b.1).abs() < 1e-10).then_some((s, u))
}

/// Normalizes a solution of `pos(s) = g pos(u)` to parameters in `[0, 1)`
/// with `s < u`.
fn normalize(c: &Curve, s: f64, u: f64, g: Deck) -> Crossing {
    let l = (c.class().0, c.class().1, 0);
    let pow = |m: i64| {
        let mut acc = (0, 0, 0);
        let step = if m >= 0 { l } else { inv(l) };
        for _ in 0..m.abs() {
            acc = mul(acc, step);
        }
        acc
    };
    let (s0, ms) = reduce(s);
    let (u0, mu) = reduce(u);
    // pos(s0 + ms) = l^ms pos(s0), so pos(s0) = l^-ms g l^mu pos(u0)
    let g = mul(mul(pow(-ms), g), pow(mu));
    if s0 < u0 {
        Crossing { s: s0, u: u0, g }
    } else {
        Crossing { s: u0, u: s0, g: inv(g) }
    }
}

/// All double points of the front at time `t`.
pub fn double_points(c: &Curve, t: f64, n: usize) -> Vec<Crossing> {
    let pts: Vec<(f64, f64)> = (0..=n).map(|k| c.pos_at(k as f64 / n as f64, t)).collect();
    let mut found: Vec<Crossing> = Vec::new();
    for g in candidates(c, t) {
        let img: Vec<(f64, f64)> = (0..=n).map(|k| act_pt(g, c.pos_at(k as f64 / n as f64, t))).collect();
        for a in 0..n {
            let (ax0, ax1) = (pts[a].0.min(pts[a + 1].0), pts[a].0.max(pts[a + 1].0));
            let (ay0, ay1) = (pts[a].1.min(pts[a + 1].1), pts[a].1.max(pts[a + 1].1));
            for b in 0..n {
                if img[b].0.max(img[b + 1].0) < ax0
                    || img[b].0.min(img[b + 1].0) > ax1
                    || img[b].1.max(img[b + 1].1) < ay0
                    || img[b].1.min(img[b + 1].1) > ay1
                {
                    continue;
                }
                if let Some((x, y)) = seg_hit(pts[a], pts[a + 1], img[b], img[b + 1]) {
                    let s = (a as f64 + x) / n as f64;
                    let u = (b as f64 + y) / n as f64;
                    if let Some((s, u)) = refine(c, t, g, s, u) {
                        let cr = normalize(c, s, u, g);
                        if (cr.u - cr.s).abs() > 1e-9
                            && !found.iter().any(|f| (f.s - cr.s).abs() < 1e-7 && (f.u - cr.u).abs() < 1e-7)
                        {
                            found.push(cr);
                        }
                    }
                }
            }
        }
    }
    found.sort_by(|a, b| a.s.partial_cmp(&b.s).unwrap());
    found
}

/// The front code at time `t`, with arcs read off through reference tails:
/// the tail of a first visit is fixed by the cell of its lift, the tail of a
/// second visit follows it and turns by the short rotation between the two
/// normals.
pub fn front_code(c: &Curve, t: f64, n: usize) -> FrontCode {
    let k = SurfaceSpec::klein();
    let l = c.class();
    let dps = double_points(c, t, n);
    if dps.is_empty() {
        return FrontCode::new(k, vec![], vec![elem(l)]);
    }
    // (param, id, slot, tail)
    let mut visits: Vec<(f64, u32, Slot, Deck)> = Vec::new();
    for (idx, d) in dps.iter().enumerate() {
        let id = idx as u32 + 1;
        let ps = c.lift(d.s, t);
        let es = cell(ps);
        let frame = act(inv(es), ps).2;
        // pos(u) = g^-1 pos(s), so the cell of u's point is g^-1 times that of s
        let base = mul(inv(d.g), (es.0, es.1, 0));
        let pu = c.lift(d.u, t);
        let th = act(inv(base), pu).2;
        let kq = ((th - frame) / TAU).round() as i64;
        let eu = mul(base, (0, 0, kq));
        visits.push((d.s, id, Slot::First, es));
        visits.push((d.u, id, Slot::Second, eu));
    }
    visits.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let m = visits.len();
    let events = visits
        .iter()
        .map(|v| Event::DoublePoint {
            id: v.1,
            slot: v.2,
            xtype: XType::R1,
        })
        .collect();
    let arcs = (0..m)
        .map(|p| {
            let next = if p + 1 < m { visits[p + 1].3 } else { mul(l, visits[0].3) };
            elem(mul(inv(visits[p].3), next))
        })
        .collect();
    FrontCode::new(k, events, arcs)
}

/// One crossing of the loop, with the data used to classify it.
#[derive(Debug, Clone)]
pub struct SlideEvent {
    pub t: f64,
    pub event: CrossingEvent,
}

/// Solutions of `X(s) - X(u) = j/2` and `X'(s) Y'(u) + Y'(s) X'(u) = 0`:
/// tangencies between a branch of `L'` and a branch of its d-translate.
fn tangencies(c: &Curve, j: i64, n: usize) -> Vec<(f64, f64)> {
    let f = |s: f64, u: f64| {
        let (a, b) = (c.vel(s), c.vel(u));
        (c.pos(s).0 - c.pos(u).0 - j as f64 / 2.0, a.0 * b.1 + a.1 * b.0)
    };
    let mut out: Vec<(f64, f64)> = Vec::new();
    let h = 1.0 / n as f64;
    for a in 0..n {
        for b in 0..n {
            let (s0, u0) = (a as f64 * h, b as f64 * h);
            let corners = [f(s0, u0), f(s0 + h, u0), f(s0, u0 + h), f(s0 + h, u0 + h)];
            let ch = |sel: fn(&(f64, f64)) -> f64| {
                let v: Vec<f64> = corners.iter().map(sel).collect();
                v.iter().any(|&x| x <= 0.0) && v.iter().any(|&x| x >= 0.0)
            };
            if !(ch(|p| p.0) && ch(|p| p.1)) {
                continue;
            }
            let (mut s, mut u) = (s0 + h / 2.0, u0 + h / 2.0);
            let mut ok = false;
            for _ in 0..60 {
                let (f1, f2) = f(s, u);
                if f1.abs() + f2.abs() < 1e-13 {
                    ok = true;
                    break;
                }
                let e = 1e-7;
                let (a1, a2) = f(s + e, u);
                let (b1, b2) = f(s, u + e);
                let m = [[(a1 - f1) / e, (b1 - f1) / e], [(a2 - f2) / e, (b2 - f2) / e]];
                let den = m[0][0] * m[1][1] - m[0][1] * m[1][0];
                if den.abs() < 1e-14 {
                    break;
                }
                s -= (f1 * m[1][1] - f2 * m[0][1]) / den;
                u -= (m[0][0] * f2 - m[1][0] * f1) / den;
            }
            if !ok {
                continue;
            }
            let (s, u) = (reduce(s).0, reduce(u).0);
            if !out.iter().any(|o| (o.0 - s).abs() < 1e-7 && (o.1 - u).abs() < 1e-7) {
                out.push((s, u));
            }
        }
    }
    out
}

/// Roots of `X(u) = x` for `u` in `[0, 1)`.
fn x_roots(c: &Curve, x: f64, n: usize) -> Vec<f64> {
    let f = |u: f64| c.pos(u).0 - x;
    let mut out = Vec::new();
    for k in 0..n {
        let (mut a, mut b) = (k as f64 / n as f64, (k + 1) as f64 / n as f64);
        let (mut fa, fb) = (f(a), f(b));
        if fa == 0.0 {
            out.push(a);
            continue;
        }
        if fa * fb > 0.0 {
            continue;
        }
        for _ in 0..100 {
            let m = 0.5 * (a + b);
            let fm = f(m);
            if fa * fm <= 0.0 {
                b = m;
            } else {
                a = m;
                fa = fm;
            }
        }
        out.push(0.5 * (a + b));
    }
    out
}

/// Odd deck elements `c^i d^j` with `j` in a range wide enough for `c`.
fn odd_range(c: &Curve) -> std::ops::RangeInclusive<i64> {
    let (x0, x1, _, _) = bbox(c, 512);
    let r = (2.0 * (x1 - x0 + c.x.lin.abs())).ceil() as i64 + 1;
    -r..=r
}

/// Times in `[0, 1)` at which `pos_t(s) = c^i d^j pos_t(u)` for odd `j`,
/// given that the x coordinates already agree: `2t = i - Y(s) - Y(u)`.
fn times(ys: f64, yu: f64) -> Vec<(f64, i64)> {
    let base = -ys - yu;
    let i0 = (-base).floor() as i64 - 1;
    (i0..i0 + 4)
        .filter_map(|i| {
            let t = (i as f64 + base) / 2.0;
            (0.0..1.0).contains(&t).then_some((t, i))
        })
        .collect()
}

/// Every crossing of the loop, sorted by time.
pub fn slide_events(c: &Curve, n: usize) -> Vec<SlideEvent> {
    let l = c.class();
    let mut out = Vec::new();
    for j in odd_range(c).filter(|j| j.rem_euclid(2) == 1) {
        for (s, u) in tangencies(c, j, n) {
            if s >= u {
                // the same tangency appears as (u, s) with j negated
                continue;
            }
            for (t, i) in times(c.pos(s).1, c.pos(u).1) {
                out.push(SlideEvent {
                    t,
                    event: tangency_event(c, s, u, (i, j, 0), l),
                });
            }
        }
    }
    // triple points: a self-crossing of L' met by a branch of a d-translate
    for d in double_points(c, 0.0, n).into_iter().filter(|d| d.g.1.rem_euclid(2) == 0) {
        let p = c.pos(d.s);
        for j in odd_range(c).filter(|j| j.rem_euclid(2) == 1) {
            for u in x_roots(c, p.0 - j as f64 / 2.0, 4 * n) {
                for (t, i) in times(p.1, c.pos(u).1) {
                    out.push(SlideEvent {
                        t,
                        event: triple_event(c, d, u, (i, j, 0), t, l),
                    });
                }
            }
        }
    }
    out.sort_by(|a, b| a.t.partial_cmp(&b.t).unwrap());
    out
}

/// A tangency `pos_t(s) = g pos_t(u)` with `g` odd. Both families move
/// vertically in opposite directions, so double points are born when the
/// branch of `L'` bends away from the other one on the side it moves to.
fn tangency_event(c: &Curve, s: f64, u: f64, g: Deck, l: Deck) -> CrossingEvent {
    let na = c.normal(s);
    let nb = dvec(g, c.normal(u));
    let kap = |acc: (f64, f64), vel: (f64, f64)| dot(acc, na) / dot(vel, vel);
    let ka = kap(c.acc(s), c.vel(s));
    let kb = kap(dvec(g, c.acc(u)), c.vel(u));
    let sign = if (ka - kb) * na.1 < 0.0 { Sign::Plus } else { Sign::Minus };
    if dot(na, nb) < 0.0 {
        return CrossingEvent::new(Stratum::Kminus, sign, None);
    }
    // the lift at s is G applied to the lift at u
    let k = ((-c.angle(s) - c.angle(u)) / TAU).round() as i64;
    let gg = mul(g, (0, 0, k));
    let a = inv(gg);
    let b = mul(gg, l);
    let key = kplus_key(&elem(a), &elem(b), Some(0)).unwrap();
    CrossingEvent::new(Stratum::Kplus, sign, Some(key))
}

/// Loops of a triple point from its three visits `(param, E)` with
/// `pos(v) = E pos(v0)` for a common reference visit `v0`.
pub fn triple_loops(c: &Curve, t: f64, mut visits: Vec<(f64, Deck)>, l: Deck) -> [Deck; 3] {
    visits.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let first = c.lift(visits[0].0, t);
    let rel = |v: (f64, Deck)| {
        let e = mul(v.1, inv(visits[0].1));
        let th = c.lift(v.0, t).2;
        let k = ((par(e.1) as f64 * th - first.2) / TAU).round() as i64;
        mul(e, (0, 0, k))
    };
    let a = rel(visits[1]);
    let b = rel(visits[2]);
    [a, mul(inv(a), b), mul(inv(b), l)]
}

/// The triple point where the self-crossing `d` of `L'` meets the branch at
/// `u` of the translate by `g`: `pos_t(d.s) = g pos_t(u)`.
fn triple_event(c: &Curve, d: Crossing, u: f64, g: Deck, t: f64, l: Deck) -> CrossingEvent {
    // pos(v) = E pos(d.s)
    let visits = vec![(d.s, (0, 0, 0)), (d.u, inv(d.g)), (u, inv(g))];
    let [x, y, z] = triple_loops(c, t, visits.clone(), l);
    let key = t_key(&elem(x), &elem(y), &elem(z), Some(0)).unwrap();
    // branches in the chart at pos(d.s): E^-1 applied to the curve near v
    let mut br: Vec<(f64, (f64, f64), (f64, f64))> = visits
        .iter()
        .map(|&(p, e)| (p, dvec(inv(e), c.vel(p)), dvec(inv(e), (0.0, 1.0))))
        .collect();
    br.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    // vertex of lines a and b a unit time after the crossing
    let vx = |a: usize, b: usize| {
        let (da, wa) = (br[a].1, br[a].2);
        let (db, wb) = (br[b].1, br[b].2);
        let rhs = (wb.0 - wa.0, wb.1 - wa.1);
        let lam = det(rhs, (-db.0, -db.1)) / det(da, (-db.0, -db.1));
        (wa.0 + lam * da.0, wa.1 + lam * da.1)
    };
    let v = [vx(0, 1), vx(1, 2), vx(2, 0)];
    let sides = [(v[2], v[0]), (v[0], v[1]), (v[1], v[2])];
    let q = (0..3)
        .filter(|&i| {
            let (from, to) = sides[i];
            dot(br[i].1, (to.0 - from.0, to.1 - from.1)) > 0.0
        })
        .count();
    let sign = if q % 2 == 0 { Sign::Plus } else { Sign::Minus };
    CrossingEvent::new(Stratum::T, sign, Some(key))
}

/// A lift of class `d^2 f^3`: one horizontal period with three curls and a
/// vertical wobble, generic enough that no two crossings of the loop share a
/// time.
pub fn fixture_curve() -> Curve {
    Curve::new(
        Series {
            lin: 1.0,
            coef: vec![(0.0, 0.0), (0.01, 0.03), (0.0, 0.0), (0.08, 0.0)],
        },
        Series {
            lin: 0.0,
            coef: vec![(0.3, 0.0), (0.02, 0.15), (0.01, 0.0), (0.0, 0.08)],
        },
    )
}

/// Grid used for fixtures and checks.
pub const N: usize = 600;
