//! Klein bottle bundle group: elements c^i d^j f^k with d c = c^-1 d,
//! c f = f c and d f = f^-1 d.

use super::word::{gen_of, Letter};
use super::GroupElem;

pub type Coords = (i64, i64, i64);

#[inline]
fn s(j: i64) -> i64 {
    if j.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn mul(a: Coords, b: Coords) -> Coords {
    (a.0 + s(a.1) * b.0, a.1 + b.1, s(b.1) * a.2 + b.2)
}

pub fn inv(a: Coords) -> Coords {
    // (i, j, k)^-1 = (-s(j) i, -j, -s(j) k)
    (-s(a.1) * a.0, -a.1, -s(a.1) * a.2)
}

fn letter(l: Letter) -> Coords {
    let e = if l & 1 == 0 { 1 } else { -1 };
    if gen_of(l) == 0 {
        (e, 0, 0)
    } else {
        (0, e, 0)
    }
}

pub fn coords_of_word(w: &[Letter], fiber: i64) -> Coords {
    let mut acc = (0, 0, 0);
    for &l in w {
        acc = mul(acc, letter(l));
    }
    mul(acc, (0, 0, fiber))
}

pub fn coords(e: &GroupElem) -> Coords {
    coords_of_word(e.word(), e.fiber_exp())
}
