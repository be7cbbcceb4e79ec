//! Free-group word utilities. A letter is `2 * generator + inverse_bit`, so the
//! natural integer order is the shortlex letter order a1 < a1^-1 < b1 < ...

use std::cmp::Ordering;

pub type Letter = u16;

#[inline]
pub fn inv(l: Letter) -> Letter {
    l ^ 1
}

#[inline]
pub fn gen_of(l: Letter) -> u16 {
    l >> 1
}

/// Appends `l` to a freely reduced word, cancelling if needed.
pub fn push_reduce(w: &mut Vec<Letter>, l: Letter) {
    if w.last() == Some(&inv(l)) {
        w.pop();
    } else {
        w.push(l);
    }
}

pub fn reduce(w: &[Letter]) -> Vec<Letter> {
    let mut out = Vec::with_capacity(w.len());
    for &l in w {
        push_reduce(&mut out, l);
    }
    out
}

pub fn concat(a: &[Letter], b: &[Letter]) -> Vec<Letter> {
    let mut out = a.to_vec();
    for &l in b {
        push_reduce(&mut out, l);
    }
    out
}

pub fn concat3(a: &[Letter], b: &[Letter], c: &[Letter]) -> Vec<Letter> {
    let mut out = concat(a, b);
    for &l in c {
        push_reduce(&mut out, l);
    }
    out
}

pub fn inverse(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|&l| inv(l)).collect()
}

/// `w^p` for a reduced `w`, freely reduced.
pub fn power(w: &[Letter], p: i64) -> Vec<Letter> {
    let base = if p < 0 { inverse(w) } else { w.to_vec() };
    let mut out = Vec::new();
    for _ in 0..p.unsigned_abs() {
        for &l in &base {
            push_reduce(&mut out, l);
        }
    }
    out
}

/// Length of the reduced form of `a * b * c` without building more than needed.
pub fn reduced_len3(a: &[Letter], b: &[Letter], c: &[Letter]) -> usize {
    concat3(a, b, c).len()
}

pub fn shortlex(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Splits a reduced word as `p * core * p^-1` with `core` cyclically reduced.
pub fn cyclic_split(w: &[Letter]) -> (Vec<Letter>, Vec<Letter>) {
    let mut i = 0;
    let n = w.len();
    while i < n / 2 && w[i] == inv(w[n - 1 - i]) {
        i += 1;
    }
    (w[..i].to_vec(), w[i..n - i].to_vec())
}

/// Rotation index `k` whose rotation `w[k..] ++ w[..k]` is shortlex minimal.
pub fn min_rotation_index(w: &[Letter]) -> usize {
    let n = w.len();
    let mut best = 0;
    for k in 1..n {
        for i in 0..n {
            let x = w[(k + i) % n];
            let y = w[(best + i) % n];
            if x != y {
                if x < y {
                    best = k;
                }
                break;
            }
        }
    }
    best
}

pub fn rotate(w: &[Letter], k: usize) -> Vec<Letter> {
    let mut out = w[k..].to_vec();
    out.extend_from_slice(&w[..k]);
    out
}

/// Returns `p` with `z = s^p` when `z` is a power of the cyclically reduced `s`.
pub fn power_of(z: &[Letter], s: &[Letter]) -> Option<i64> {
    if z.is_empty() {
        return Some(0);
    }
    if s.is_empty() || z.len() % s.len() != 0 {
        return None;
    }
    let p = (z.len() / s.len()) as i64;
    if power(s, p) == z {
        Some(p)
    } else if power(s, -p) == z {
        Some(-p)
    } else {
        None
    }
}

/// Smallest period of a cyclically reduced word that divides its length.
pub fn period(w: &[Letter]) -> usize {
    let n = w.len();
    for p in 1..=n {
        if n % p == 0 && (p..n).all(|i| w[i] == w[i - p]) {
            return p;
        }
    }
    n
}

/// Root and exponent of a nontrivial reduced word in a free group.
pub fn free_root(w: &[Letter]) -> (Vec<Letter>, i64) {
    let (pre, core) = cyclic_split(w);
    let p = period(&core);
    let root_core = core[..p].to_vec();
    let root = concat3(&pre, &root_core, &inverse(&pre));
    (root, (core.len() / p) as i64)
}

/// Canonical conjugacy representative in a free group, with a conjugator
/// `c` such that `c w c^-1 = rep`.
pub fn free_conj_canon(w: &[Letter]) -> (Vec<Letter>, Vec<Letter>) {
    let (pre, core) = cyclic_split(w);
    if core.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let k = min_rotation_index(&core);
    let rep = rotate(&core, k);
    // rotating core by k is conjugation by core[..k]^-1
    let c = concat(&inverse(&core[..k]), &inverse(&pre));
    (rep, c)
}
