//! Independent oracles shared by the integration tests. Nothing here calls the
//! normal-form or canonicalization code it is used to check.
#![allow(dead_code)]

use rand::Rng;

pub type L = u16;

fn inv(l: L) -> L {
    l ^ 1
}

fn free_reduce(w: &[L]) -> Vec<L> {
    let mut out: Vec<L> = Vec::new();
    for &l in w {
        if out.last() == Some(&inv(l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Dehn reduction in the closed genus-g bundle group with the relator
/// [a1,b1]...[ag,bg] = f^(2g-2). Returns the reduced word and accumulated fiber.
pub fn dehn_reduce(genus: usize, w: &[L]) -> (Vec<L>, i64) {
    let e = 2 * genus as i64 - 2;
    let mut rel: Vec<L> = Vec::new();
    for i in 0..genus {
        let a = (4 * i) as L;
        let b = (4 * i + 2) as L;
        rel.extend_from_slice(&[a, b, inv(a), inv(b)]);
    }
    let n = rel.len();
    let rel_inv: Vec<L> = rel.iter().rev().map(|&l| inv(l)).collect();
    // all cyclic permutations of R and R^-1 with their fiber value
    let mut cycles: Vec<(Vec<L>, i64)> = Vec::new();
    for (r, val) in [(&rel, e), (&rel_inv, -e)] {
        for k in 0..n {
            let mut c = r[k..].to_vec();
            c.extend_from_slice(&r[..k]);
            cycles.push((c, val));
        }
    }
    let mut cur = free_reduce(w);
    let mut fiber = 0i64;
    'outer: loop {
        for len in (n / 2 + 1..=n).rev() {
            for (c, val) in &cycles {
                let x = &c[..len];
                if cur.len() < len {
                    continue;
                }
                for start in 0..=cur.len() - len {
                    if &cur[start..start + len] == x {
                        // x y = f^val, so x = f^val y^-1
                        let y_inv: Vec<L> = c[len..].iter().rev().map(|&l| inv(l)).collect();
                        let mut next = cur[..start].to_vec();
                        next.extend(y_inv);
                        next.extend_from_slice(&cur[start + len..]);
                        cur = free_reduce(&next);
                        fiber += val;
                        continue 'outer;
                    }
                }
            }
        }
        return (cur, fiber);
    }
}

/// Equality in the genus-g bundle group of (w1, f1) and (w2, f2).
pub fn dehn_equal(genus: usize, w1: &[L], f1: i64, w2: &[L], f2: i64) -> bool {
    let mut w = w1.to_vec();
    w.extend(w2.iter().rev().map(|&l| inv(l)));
    let (r, f) = dehn_reduce(genus, &w);
    r.is_empty() && f + f1 - f2 == 0
}

type M = [[i128; 2]; 2];

fn mm(a: &M, b: &M) -> M {
    let mut c = [[0i128; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

/// Faithful Sanov representation of the free group of rank r (x_i embedded
/// in F2 as s^i t s^-i), exact integer matrices.
pub fn sanov(w: &[L]) -> M {
    let s: M = [[1, 2], [0, 1]];
    let s_inv: M = [[1, -2], [0, 1]];
    let t: M = [[1, 0], [2, 1]];
    let t_inv: M = [[1, 0], [-2, 1]];
    let mut acc: M = [[1, 0], [0, 1]];
    for &l in w {
        let i = (l >> 1) as usize + 1;
        let mut g: M = [[1, 0], [0, 1]];
        for _ in 0..i {
            g = mm(&g, &s);
        }
        g = mm(&g, if l & 1 == 0 { &t } else { &t_inv });
        for _ in 0..i {
            g = mm(&g, &s_inv);
        }
        acc = mm(&acc, &g);
    }
    acc
}

pub fn random_word<R: Rng, S: rand::distributions::uniform::SampleRange<usize>>(
    rng: &mut R,
    ngen: u16,
    len: S,
) -> Vec<L> {
    let n = rng.gen_range(len);
    (0..n).map(|_| rng.gen_range(0..2 * ngen)).collect()
}

/// Whether two words are equal in the free group, by free reduction.
pub fn free_equal(w1: &[L], w2: &[L]) -> bool {
    free_reduce(w1) == free_reduce(w2)
}

fn cyclic_reduce(w: &[L]) -> Vec<L> {
    let mut v = free_reduce(w);
    while v.len() >= 2 && v[0] == inv(*v.last().unwrap()) {
        v.pop();
        v.remove(0);
    }
    v
}

/// Conjugacy in the free group: cyclically reduced forms agree up to rotation.
pub fn free_conjugate(w1: &[L], w2: &[L]) -> bool {
    let (a, b) = (cyclic_reduce(w1), cyclic_reduce(w2));
    if a.len() != b.len() {
        return false;
    }
    a.is_empty() || (0..a.len()).any(|r| a[r..].iter().chain(&a[..r]).eq(b.iter()))
}

/// Signed letter counts per generator.
pub fn exponent_sums(ngen: u16, w: &[L]) -> Vec<i64> {
    let mut v = vec![0; ngen as usize];
    for &l in w {
        v[(l >> 1) as usize] += if l & 1 == 0 { 1 } else { -1 };
    }
    v
}

/// Fiber shifts `i` in `range` for which `a` is conjugate to `b f^i` by a
/// conjugator of length at most 2, decided by Dehn equality in genus 2.
pub fn window_shifts(a: (&[L], i64), b: (&[L], i64), range: std::ops::RangeInclusive<i64>) -> Vec<i64> {
    let mut conjs: Vec<Vec<L>> = vec![vec![]];
    for l in 0..8 {
        conjs.push(vec![l]);
        for m in 0..8 {
            if m != inv(l) {
                conjs.push(vec![l, m]);
            }
        }
    }
    range
        .filter(|&i| {
            conjs.iter().any(|x| {
                let mut lhs = x.clone();
                lhs.extend_from_slice(a.0);
                lhs.extend(x.iter().rev().map(|&l| inv(l)));
                dehn_equal(2, &lhs, a.1, b.0, b.1 + i)
            })
        })
        .collect()
}
