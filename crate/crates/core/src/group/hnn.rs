//! Closed orientable surface groups of genus g >= 2 as an HNN extension.
//!
//! The base group H is free on a1, b1, ..., a_{g-1}, b_{g-1}, a_g and the stable
//! letter is t = b_g. With u = a_g, W = [a1,b1]...[a_{g-1},b_{g-1}] and v = W a_g
//! the surface relation becomes t u t^-1 = v f^-e with e = 2g - 2 (f central).
//! Normal form: h0 t^e1 r1 ... t^en rn where each ri is the shortlex-least element
//! of its coset <u> ri (after t) or <v> ri (after t^-1).

use super::word::{self, inv, Letter};
use std::cmp::Ordering;

#[derive(Debug, Clone)]
pub struct Hnn {
    pub t: Letter,
    pub u: Vec<Letter>,
    pub v: Vec<Letter>,
    pub e: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nf {
    pub h0: Vec<Letter>,
    pub syl: Vec<(i8, Vec<Letter>)>,
    pub fiber: i64,
}

/// A cyclically reduced conjugate as a cyclic sequence t^e_k h_k.
#[derive(Debug, Clone)]
struct CycSeq {
    syl: Vec<(i8, Vec<Letter>)>,
}

/// Result of conjugacy canonicalization on the base group.
#[derive(Debug, Clone)]
pub struct BaseCanon {
    /// The canonical word (a representative of the class, not yet normalized).
    pub rep: Vec<Letter>,
    /// `conj * w * conj^-1 = rep`.
    pub conj: Vec<Letter>,
    /// Root `y` and power `j` with `y^j = rep` and `y` primitive (rep nontrivial).
    pub root: Option<(Vec<Letter>, i64)>,
}

impl Hnn {
    pub fn new(genus: usize) -> Self {
        let a = |i: usize| (4 * (i - 1)) as Letter;
        let b = |i: usize| (4 * (i - 1) + 2) as Letter;
        let mut v = Vec::new();
        for i in 1..genus {
            v.extend_from_slice(&[a(i), b(i), inv(a(i)), inv(b(i))]);
        }
        v.push(a(genus));
        Hnn {
            t: b(genus),
            u: vec![a(genus)],
            v,
            e: 2 * genus as i64 - 2,
        }
    }

    #[inline]
    fn is_t(&self, l: Letter) -> bool {
        l & !1 == self.t
    }

    fn sub(&self, eps: i8) -> &[Letter] {
        if eps > 0 {
            &self.u
        } else {
            &self.v
        }
    }

    fn other(&self, eps: i8) -> &[Letter] {
        if eps > 0 {
            &self.v
        } else {
            &self.u
        }
    }

    /// Splits `r = s^p * rep` with `rep` the least element of `<s> r`.
    fn coset_split(s: &[Letter], r: &[Letter]) -> (i64, Vec<Letter>) {
        let bound = (2 * r.len() / s.len()) as i64 + 2;
        let mut best_q = 0i64;
        let mut best = r.to_vec();
        for q in -bound..=bound {
            if q == 0 {
                continue;
            }
            let cand = word::concat(&word::power(s, q), r);
            if word::shortlex(&cand, &best) == Ordering::Less {
                best = cand;
                best_q = q;
            }
        }
        (-best_q, best)
    }

    fn renormalize(&self, nf: &mut Nf, mut k: usize) {
        loop {
            let eps = nf.syl[k].0;
            let (p, rep) = Self::coset_split(self.sub(eps), &nf.syl[k].1);
            nf.syl[k].1 = rep;
            if p == 0 {
                return;
            }
            let pushed = word::power(self.other(eps), p);
            nf.fiber += if eps > 0 { -self.e * p } else { self.e * p };
            if k == 0 {
                nf.h0 = word::concat(&nf.h0, &pushed);
                return;
            }
            nf.syl[k - 1].1 = word::concat(&nf.syl[k - 1].1, &pushed);
            k -= 1;
        }
    }

    pub fn push_letter(&self, nf: &mut Nf, l: Letter) {
        if self.is_t(l) {
            let d: i8 = if l == self.t { 1 } else { -1 };
            if let Some(last) = nf.syl.last() {
                if last.1.is_empty() && last.0 == -d {
                    nf.syl.pop();
                    return;
                }
            }
            nf.syl.push((d, Vec::new()));
        } else if nf.syl.is_empty() {
            word::push_reduce(&mut nf.h0, l);
        } else {
            let k = nf.syl.len() - 1;
            word::push_reduce(&mut nf.syl[k].1, l);
            self.renormalize(nf, k);
        }
    }

    pub fn nf(&self, w: &[Letter], fiber: i64) -> Nf {
        let mut nf = Nf {
            h0: Vec::new(),
            syl: Vec::new(),
            fiber,
        };
        for &l in w {
            self.push_letter(&mut nf, l);
        }
        nf
    }

    pub fn nf_word(&self, nf: &Nf) -> Vec<Letter> {
        let mut out = nf.h0.clone();
        for (eps, r) in &nf.syl {
            out.push(if *eps > 0 { self.t } else { inv(self.t) });
            out.extend_from_slice(r);
        }
        out
    }

    /// Normal form of `w * f^fiber`: returns (word, fiber).
    pub fn normalize(&self, w: &[Letter], fiber: i64) -> (Vec<Letter>, i64) {
        let nf = self.nf(w, fiber);
        (self.nf_word(&nf), nf.fiber)
    }

    fn t_letter(&self, eps: i8) -> Letter {
        if eps > 0 {
            self.t
        } else {
            inv(self.t)
        }
    }

    fn seq_word(&self, syl: &[(i8, Vec<Letter>)]) -> Vec<Letter> {
        let mut out = Vec::new();
        for (eps, h) in syl {
            out.push(self.t_letter(*eps));
            out.extend_from_slice(h);
        }
        out
    }

    /// Conjugates to a cyclically reduced form. Returns the conjugator `c`
    /// (`c w c^-1 = current`) and either an H-word (t-length 0) or a cyclic sequence.
    fn cyclic_reduce(&self, w: &[Letter]) -> (Vec<Letter>, Result<Vec<Letter>, CycSeq>) {
        let mut conj: Vec<Letter> = Vec::new();
        let mut cur = self.nf_word(&self.nf(w, 0));
        loop {
            let nf = self.nf(&cur, 0);
            if nf.syl.is_empty() {
                let (pre, core) = word::cyclic_split(&nf.h0);
                conj = word::concat(&word::inverse(&pre), &conj);
                return (conj, Ok(core));
            }
            let n = nf.syl.len();
            let (e1, en) = (nf.syl[0].0, nf.syl[n - 1].0);
            let z = word::concat(&nf.syl[n - 1].1, &nf.h0);
            let h0inv = word::inverse(&nf.h0);
            if e1 == -en {
                if let Some(q) = word::power_of(&z, self.sub(en)) {
                    // x = t^en s^q, conjugating h0^-1 g h0 by x pinches the seam
                    let mut x = vec![self.t_letter(en)];
                    x.extend(word::power(self.sub(en), q));
                    let c = word::concat(&x, &h0inv);
                    let next = word::concat3(&c, &cur, &word::inverse(&c));
                    cur = self.nf_word(&self.nf(&next, 0));
                    conj = word::concat(&c, &conj);
                    continue;
                }
            }
            conj = word::concat(&h0inv, &conj);
            let mut syl = nf.syl.clone();
            syl[n - 1].1 = z;
            return (conj, Err(CycSeq { syl }));
        }
    }

    /// Left and right subgroups around h_k: h_k sits between t^{e_k} and t^{e_{k+1}}.
    fn tau(&self, eps: i8) -> &[Letter] {
        self.sub(eps)
    }
    fn sigma(&self, eps: i8) -> &[Letter] {
        self.other(eps)
    }

    /// Canonical conjugacy data for a base-group word.
    pub fn conj_canon(&self, w: &[Letter]) -> BaseCanon {
        let (conj, red) = self.cyclic_reduce(w);
        match red {
            Ok(h) => self.canon_in_h(conj, h),
            Err(seq) => self.canon_seq(conj, seq),
        }
    }

    fn canon_in_h(&self, conj: Vec<Letter>, h: Vec<Letter>) -> BaseCanon {
        if h.is_empty() {
            return BaseCanon {
                rep: Vec::new(),
                conj,
                root: None,
            };
        }
        if let Some(p) = word::power_of(&h, &self.u) {
            return BaseCanon {
                rep: h,
                conj,
                root: Some((self.u.iter().map(|&l| if p < 0 { inv(l) } else { l }).collect(), p.abs())),
            };
        }
        // h a rotation of v^p: conjugate back to v^p, then across t^-1 to u^p
        if h.len() % self.v.len() == 0 {
            let p = (h.len() / self.v.len()) as i64;
            for sign in [1i64, -1] {
                let vp = word::power(&self.v, sign * p);
                for k in 0..h.len() {
                    if word::rotate(&h, k) == vp {
                        // rotation by k is conjugation by h[..k]^-1
                        let mut x = vec![inv(self.t)];
                        x.extend(word::inverse(&h[..k]));
                        let rep = word::power(&self.u, sign * p);
                        let root = word::power(&self.u, sign);
                        return BaseCanon {
                            rep,
                            conj: word::concat(&x, &conj),
                            root: Some((root, p)),
                        };
                    }
                }
            }
        }
        let k = word::min_rotation_index(&h);
        let rep = word::rotate(&h, k);
        let c = word::concat(&word::inverse(&h[..k]), &conj);
        let (r, j) = word::free_root(&rep);
        BaseCanon {
            rep,
            conj: c,
            root: Some((r, j)),
        }
    }

    fn transfer_bound(&self, seq: &CycSeq) -> i64 {
        let s: usize = seq.syl.iter().map(|(_, h)| h.len()).sum();
        let maxh = seq.syl.iter().map(|(_, h)| h.len()).max().unwrap_or(0);
        ((s + 2 * maxh + 2 * self.v.len()) / self.v.len()) as i64 + 1
    }

    /// h'_k = tau_k^-a h_k sigma_{k+1}^b.
    fn transferred(&self, seq: &CycSeq, k: usize, a: i64, b: i64) -> Vec<Letter> {
        let n = seq.syl.len();
        let (ek, ref h) = seq.syl[k];
        let enext = seq.syl[(k + 1) % n].0;
        word::concat3(
            &word::power(self.tau(ek), -a),
            h,
            &word::power(self.sigma(enext), b),
        )
    }

    fn canon_seq(&self, conj: Vec<Letter>, seq: CycSeq) -> BaseCanon {
        let n = seq.syl.len();
        let bnd = self.transfer_bound(&seq);
        let m = (2 * bnd + 1) as usize;
        let val = |i: usize| i as i64 - bnd;
        // cost tables: cost[k][a][b] = |h'_k| with p_k = a, p_{k+1} = b
        let mut cost = vec![vec![usize::MAX; m * m]; n];
        for (k, table) in cost.iter_mut().enumerate() {
            for a in 0..m {
                for b in 0..m {
                    if n == 1 && a != b {
                        continue;
                    }
                    table[a * m + b] = self.transferred(&seq, k, val(a), val(b)).len();
                }
            }
        }
        // cyclic dynamic programme; collect all minimizing assignments
        let mut best_total = usize::MAX;
        let mut minimizers: Vec<Vec<usize>> = Vec::new();
        for a0 in 0..m {
            if n == 1 {
                let c = cost[0][a0 * m + a0];
                if c < best_total {
                    best_total = c;
                    minimizers.clear();
                }
                if c == best_total {
                    minimizers.push(vec![a0]);
                }
                continue;
            }
            // dist[k][x]: best cost of h'_0..h'_{k-1} with p_k = x
            let mut dist = vec![vec![usize::MAX; m]; n];
            for x in 0..m {
                dist[1][x] = cost[0][a0 * m + x];
            }
            for k in 1..n - 1 {
                for x in 0..m {
                    if dist[k][x] == usize::MAX {
                        continue;
                    }
                    for y in 0..m {
                        let c = dist[k][x] + cost[k][x * m + y];
                        if c < dist[k + 1][y] {
                            dist[k + 1][y] = c;
                        }
                    }
                }
            }
            let mut tot = usize::MAX;
            for x in 0..m {
                if dist[n - 1][x] != usize::MAX {
                    tot = tot.min(dist[n - 1][x] + cost[n - 1][x * m + a0]);
                }
            }
            if tot > best_total {
                continue;
            }
            if tot < best_total {
                best_total = tot;
                minimizers.clear();
            }
            // backtrack all optimal paths
            let mut stack: Vec<(usize, Vec<usize>, usize)> = Vec::new();
            for x in 0..m {
                if dist[n - 1][x] != usize::MAX && dist[n - 1][x] + cost[n - 1][x * m + a0] == tot {
                    stack.push((n - 1, vec![x], dist[n - 1][x]));
                }
            }
            while let Some((k, tail, d)) = stack.pop() {
                if k == 1 {
                    let mut p = vec![a0];
                    p.extend(tail.iter().rev());
                    minimizers.push(p);
                    if minimizers.len() > 4096 {
                        break;
                    }
                    continue;
                }
                let y = *tail.last().unwrap();
                for x in 0..m {
                    if dist[k - 1][x] != usize::MAX && dist[k - 1][x] + cost[k - 1][x * m + y] == d {
                        let mut t2 = tail.clone();
                        t2.push(x);
                        stack.push((k - 1, t2, dist[k - 1][x]));
                    }
                }
            }
        }
        let mut best: Option<(Vec<Letter>, Vec<(i8, Vec<Letter>)>, Vec<Letter>)> = None;
        for p in &minimizers {
            let hs: Vec<(i8, Vec<Letter>)> = (0..n)
                .map(|k| (seq.syl[k].0, self.transferred(&seq, k, val(p[k]), val(p[(k + 1) % n]))))
                .collect();
            let p0 = val(p[0]);
            for r in 0..n {
                let rot: Vec<(i8, Vec<Letter>)> = hs[r..].iter().chain(hs[..r].iter()).cloned().collect();
                let wrd = self.seq_word(&rot);
                if best.as_ref().map_or(true, |b| word::shortlex(&wrd, &b.0) == Ordering::Less) {
                    // c_local = Q^-1 sigma_0^-p0 with Q the first r syllables
                    let q = self.seq_word(&hs[..r]);
                    let c = word::concat(&word::inverse(&q), &word::power(self.sigma(seq.syl[0].0), -p0));
                    best = Some((wrd, rot, c));
                }
            }
        }
        let (rep, rot, c) = best.expect("nonempty minimizer set");
        let root = self.seq_root(&rot);
        BaseCanon {
            rep,
            conj: word::concat(&c, &conj),
            root: Some(root),
        }
    }

    /// Finds (alpha, beta) with h2 = tau^alpha h sigma^beta.
    fn double_coset(tau: &[Letter], sigma: &[Letter], h: &[Letter], h2: &[Letter]) -> Option<(i64, i64)> {
        let bound = ((h.len() + h2.len()) / tau.len()) as i64 + 2;
        let hinv = word::inverse(h);
        for a in -bound..=bound {
            let z = word::concat3(&hinv, &word::power(tau, -a), h2);
            if let Some(b) = word::power_of(&z, sigma) {
                return Some((a, b));
            }
        }
        None
    }

    /// Primitive root of the element given by a cyclic sequence.
    fn seq_root(&self, syl: &[(i8, Vec<Letter>)]) -> (Vec<Letter>, i64) {
        let n = syl.len();
        for j in (2..=n).rev() {
            if n % j != 0 {
                continue;
            }
            let m = n / j;
            if (0..n).any(|k| syl[k].0 != syl[(k + m) % n].0) {
                continue;
            }
            let mut alpha = vec![0i64; n];
            let mut beta = vec![0i64; n];
            let mut ok = true;
            for k in 0..n {
                let tau = self.tau(syl[k].0);
                let sigma = self.sigma(syl[(k + 1) % n].0);
                match Self::double_coset(tau, sigma, &syl[k].1, &syl[(k + m) % n].1) {
                    Some((a, b)) => {
                        alpha[k] = a;
                        beta[k] = b;
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok || (0..n).any(|k| alpha[(k + 1) % n] != -beta[k]) {
                continue;
            }
            if (0..m).any(|k| (0..j).map(|i| alpha[k + i * m]).sum::<i64>() != 0) {
                continue;
            }
            let mut q = vec![0i64; n + 1];
            for k in m..=n {
                q[k] = q[k - m] + alpha[(k - m) % n];
            }
            let mut root = Vec::new();
            for k in 0..m {
                root.push(self.t_letter(syl[k].0));
                let h = word::concat3(
                    &word::power(self.tau(syl[k].0), -q[k]),
                    &syl[k].1,
                    &word::power(self.sigma(syl[(k + 1) % n].0), q[k + 1]),
                );
                root.extend(h);
            }
            return (root, j as i64);
        }
        (self.seq_word(syl), 1)
    }
}
