//! Brute-force oracles written against the definitions, sharing no code
//! with the library beyond the types used to hand results back.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use partial_galois::finring::{Idem, Ring};
use partial_galois::group::FiniteGroup;
use partial_galois::paction::PartialAction;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Residue vectors over `Z/m_1 x ... x Z/m_k` with a partial action given
/// by a global permutation action cut down to an idempotent.
#[derive(Clone, Debug)]
pub struct Oracle {
    pub moduli: Vec<u64>,
    pub order: usize,
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub ones: Vec<Vec<bool>>,
    /// `maps[g][j]`: image of component `j` under `alpha_g`.
    pub maps: Vec<Vec<Option<usize>>>,
}

pub type Elem = Vec<u64>;

pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

pub fn klein_table() -> Vec<Vec<usize>> {
    (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect()
}

impl Oracle {
    /// `D_g = e beta_g(e)`, `alpha_g = beta_g` on `D_{g^-1}`.
    pub fn restricted(moduli: &[u64], table: Vec<Vec<usize>>, perms: &[Vec<usize>], e: &[bool]) -> Oracle {
        let n = table.len();
        let inv: Vec<usize> = (0..n).map(|a| (0..n).find(|&b| table[a][b] == 0).unwrap()).collect();
        let kept: Vec<usize> = (0..moduli.len()).filter(|&j| e[j]).collect();
        let pos = |j: usize| kept.iter().position(|&k| k == j);
        let mut ones = Vec::new();
        let mut maps = Vec::new();
        for g in 0..n {
            // component j of D_g survives when j and beta_{g^-1}(j) are kept
            let gi = inv[g];
            ones.push(kept.iter().map(|&j| e[perms[gi][j]]).collect::<Vec<bool>>());
            let mut m = vec![None; kept.len()];
            for &j in &kept {
                let t = perms[g][j];
                if e[t] {
                    m[pos(j).unwrap()] = pos(t);
                }
            }
            maps.push(m);
        }
        Oracle {
            moduli: kept.iter().map(|&j| moduli[j]).collect(),
            order: n,
            mul: table,
            inv,
            ones,
            maps,
        }
    }

    pub fn fix_a() -> Oracle {
        Oracle::restricted(&[3, 3], cyclic_table(2), &[vec![0, 1], vec![1, 0]], &[true, true])
    }

    pub fn fix_b() -> Oracle {
        let perms: Vec<Vec<usize>> = (0..4).map(|k| (0..4).map(|j| (j + k) % 4).collect()).collect();
        Oracle::restricted(&[3, 3, 3, 3], cyclic_table(4), &perms, &[true, true, true, false])
    }

    pub fn c(&self) -> usize {
        self.moduli.len()
    }

    pub fn mul_e(&self, x: &Elem, y: &Elem) -> Elem {
        (0..self.c()).map(|j| x[j] * y[j] % self.moduli[j]).collect()
    }

    pub fn cut(&self, x: &Elem, e: &[bool]) -> Elem {
        (0..self.c()).map(|j| if e[j] { x[j] } else { 0 }).collect()
    }

    /// Inverse inside the ideal `R e` by exhaustive search per component.
    pub fn inv_in(&self, x: &Elem, e: &[bool]) -> Elem {
        (0..self.c())
            .map(|j| {
                if !e[j] {
                    return 0;
                }
                let m = self.moduli[j];
                (1..m).find(|y| x[j] * y % m == 1).expect("unit")
            })
            .collect()
    }

    pub fn alpha(&self, g: usize, x: &Elem) -> Elem {
        let mut out = vec![0; self.c()];
        for (j, t) in self.maps[g].iter().enumerate() {
            if let Some(t) = t {
                out[*t] = x[j];
            }
        }
        out
    }

    pub fn tuple_idem(&self, t: &[usize]) -> Vec<bool> {
        let mut e = vec![true; self.c()];
        let mut acc = 0;
        for &g in t {
            acc = self.mul[acc][g];
            for j in 0..self.c() {
                e[j] &= self.ones[acc][j];
            }
        }
        e
    }

    pub fn tuples(&self, n: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..self.order).map(move |g| {
                        let mut s = t.clone();
                        s.push(g);
                        s
                    })
                })
                .collect();
        }
        out
    }

    pub fn index(&self, t: &[usize]) -> usize {
        t.iter().fold(0, |acc, &g| acc * self.order + g)
    }

    /// Units of the ideal `R e`.
    pub fn units(&self, e: &[bool]) -> Vec<Elem> {
        let mut out: Vec<Elem> = vec![vec![]];
        for j in 0..self.c() {
            let m = self.moduli[j];
            let choices: Vec<u64> = if e[j] {
                (1..m).filter(|&x| gcd(x, m) == 1).collect()
            } else {
                vec![0]
            };
            out = out
                .into_iter()
                .flat_map(|v| {
                    choices.iter().map(move |&x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }

    pub fn cochain_count(&self, n: usize) -> u128 {
        self.tuples(n).iter().map(|t| self.units(&self.tuple_idem(t)).len() as u128).product()
    }

    pub fn identity(&self, n: usize) -> Vec<Elem> {
        self.tuples(n)
            .iter()
            .map(|t| self.tuple_idem(t).iter().map(|&b| b as u64).collect())
            .collect()
    }

    /// `(delta^n f)(g_1..g_{n+1}) = alpha_{g_1}(f(g_2..) 1_{g_1^-1})
    /// prod_i f(.., g_i g_{i+1}, ..)^{(-1)^i} f(g_1..g_n)^{(-1)^{n+1}}`.
    pub fn delta_at(&self, n: usize, f: &[Elem], t: &[usize]) -> Elem {
        let e = self.tuple_idem(t);
        let g1 = t[0];
        let gi = self.inv[g1];
        let first = self.cut(&f[self.index(&t[1..])], &self.ones[gi]);
        let mut acc = self.cut(&self.alpha(g1, &first), &e);
        for i in 1..=n {
            let mut s: Vec<usize> = t[..i - 1].to_vec();
            s.push(self.mul[t[i - 1]][t[i]]);
            s.extend(&t[i + 1..]);
            let v = self.cut(&f[self.index(&s)], &e);
            let v = if i % 2 == 1 { self.inv_in(&v, &e) } else { v };
            acc = self.mul_e(&acc, &v);
        }
        let last = self.cut(&f[self.index(&t[..n])], &e);
        let last = if (n + 1) % 2 == 1 { self.inv_in(&last, &e) } else { last };
        self.mul_e(&acc, &last)
    }

    pub fn delta(&self, n: usize, f: &[Elem]) -> Vec<Elem> {
        self.tuples(n + 1).iter().map(|t| self.delta_at(n, f, t)).collect()
    }

    pub fn all_cochains(&self, n: usize) -> Vec<Vec<Elem>> {
        let choices: Vec<Vec<Elem>> = self.tuples(n).iter().map(|t| self.units(&self.tuple_idem(t))).collect();
        let mut out: Vec<Vec<Elem>> = vec![vec![]];
        for ch in &choices {
            out = out
                .into_iter()
                .flat_map(|v| {
                    ch.iter().map(move |x| {
                        let mut w = v.clone();
                        w.push(x.clone());
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// All `n`-cocycles by backtracking over the lexicographic order, testing
    /// each condition as soon as its entries are assigned.
    pub fn cocycles(&self, n: usize) -> Vec<Vec<Elem>> {
        let tuples = self.tuples(n);
        let choices: Vec<Vec<Elem>> = tuples.iter().map(|t| self.units(&self.tuple_idem(t))).collect();
        let ident = self.identity(n + 1);
        let mut buckets: Vec<Vec<Vec<usize>>> = vec![Vec::new(); tuples.len()];
        for t in self.tuples(n + 1) {
            let mut needed = vec![self.index(&t[1..]), self.index(&t[..n])];
            for i in 1..=n {
                let mut s: Vec<usize> = t[..i - 1].to_vec();
                s.push(self.mul[t[i - 1]][t[i]]);
                s.extend(&t[i + 1..]);
                needed.push(self.index(&s));
            }
            let k = *needed.iter().max().unwrap();
            buckets[k].push(t);
        }
        let mut out = Vec::new();
        let mut cur: Vec<Elem> = tuples.iter().map(|_| vec![0; self.c()]).collect();
        self.backtrack(n, 0, &choices, &buckets, &ident, &mut cur, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn backtrack(
        &self,
        n: usize,
        k: usize,
        choices: &[Vec<Elem>],
        buckets: &[Vec<Vec<usize>>],
        ident: &[Elem],
        cur: &mut Vec<Elem>,
        out: &mut Vec<Vec<Elem>>,
    ) {
        if k == choices.len() {
            out.push(cur.clone());
            return;
        }
        for x in &choices[k] {
            cur[k] = x.clone();
            if buckets[k].iter().all(|t| self.delta_at(n, cur, t) == ident[self.index(t)]) {
                self.backtrack(n, k + 1, choices, buckets, ident, cur, out);
            }
        }
    }

    /// `B^n`: the image of `delta^{n-1}` over all of `C^{n-1}`.
    pub fn coboundaries(&self, n: usize) -> HashSet<Vec<Elem>> {
        if n == 0 {
            return [self.identity(0)].into_iter().collect();
        }
        self.all_cochains(n - 1).iter().map(|f| self.delta(n - 1, f)).collect()
    }

    fn pow(&self, f: &[Elem], k: u64) -> Vec<Elem> {
        // entries outside the ideal are 0 and stay 0
        f.iter()
            .map(|x| {
                (0..self.c())
                    .map(|j| {
                        let m = self.moduli[j];
                        if x[j] == 0 {
                            return 0;
                        }
                        let mut r = 1 % m;
                        for _ in 0..k {
                            r = r * x[j] % m;
                        }
                        r
                    })
                    .collect()
            })
            .collect()
    }

    /// Invariant factors of `Z/B` from the counts `#{c : c^m = 1}`.
    pub fn quotient_factors(&self, z: &[Vec<Elem>], b: &HashSet<Vec<Elem>>) -> Vec<BigInt> {
        let order = z.len() / b.len();
        assert_eq!(order * b.len(), z.len(), "|B| divides |Z|");
        let mut elementary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for (p, e) in factor(order as u64) {
            let count = |k: u32| z.iter().filter(|f| b.contains(&self.pow(f, p.pow(k)))).count() / b.len();
            // r_k = number of cyclic p-factors of order >= p^k
            let mut rs = Vec::new();
            for k in 1..=e {
                rs.push(log((count(k) / count(k - 1)) as u64, p));
            }
            let mut exps = Vec::new();
            for k in 1..=e as usize {
                let here = rs[k - 1] - rs.get(k).copied().unwrap_or(0);
                for _ in 0..here {
                    exps.push(k as u32);
                }
            }
            elementary.insert(p, exps);
        }
        canonical(&elementary)
    }
}

fn log(x: u64, p: u64) -> u32 {
    let mut k = 0;
    let mut y = 1;
    while y < x {
        y *= p;
        k += 1;
    }
    assert_eq!(y, x, "{x} is a power of {p}");
    k
}

fn canonical(elementary: &BTreeMap<u64, Vec<u32>>) -> Vec<BigInt> {
    let len = elementary.values().map(|v| v.len()).max().unwrap_or(0);
    let mut out = vec![BigInt::from(1); len];
    for (p, exps) in elementary {
        let mut e = exps.clone();
        e.sort_unstable_by(|a, b| b.cmp(a));
        for (i, k) in e.iter().enumerate() {
            out[len - 1 - i] *= BigInt::from(*p).pow(*k);
        }
    }
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `H^n` invariant factors by enumeration: `Z^n` by backtracking, `B^n` as
/// the image of all of `C^{n-1}`.
pub fn oracle_cohomology(o: &Oracle, n: usize) -> Vec<BigInt> {
    let z = o.cocycles(n);
    let b = o.coboundaries(n);
    for f in &b {
        assert!(z.contains(f), "coboundaries are cocycles");
    }
    o.quotient_factors(&z, &b)
}

pub fn to_cochain(n: usize, f: &[Elem]) -> partial_galois::cohomology::Cochain {
    partial_galois::cohomology::Cochain::new(n, f.iter().map(|v| partial_galois::finring::RingElem(v.clone())).collect())
}

pub fn from_cochain(f: &partial_galois::cohomology::Cochain) -> Vec<Elem> {
    f.values().iter().map(|v| v.0.clone()).collect()
}

/// Idempotents `e` of the invariant subring: `alpha_g(e 1_{g^-1}) = e 1_g`.
pub fn invariant_idempotents(o: &Oracle) -> Vec<Vec<bool>> {
    let c = o.c();
    (0..1u32 << c)
        .map(|m| (0..c).map(|j| m >> j & 1 == 1).collect::<Vec<bool>>())
        .filter(|e| {
            let x: Elem = e.iter().map(|&b| b as u64).collect();
            (0..o.order).all(|g| o.alpha(g, &o.cut(&x, &o.ones[o.inv[g]])) == o.cut(&x, &o.ones[g]))
        })
        .collect()
}

/// A random global action by component permutations of `C_1..C_4` or
/// `C_2 x C_2`, with moduli constant on orbits, cut to a random idempotent.
pub fn random_restricted(rng: &mut ChaCha8Rng) -> (PartialAction, Oracle) {
    let kind = rng.gen_range(0..5);
    let k = rng.gen_range(1..=4usize);
    let perm = |rng: &mut ChaCha8Rng| {
        let mut p: Vec<usize> = (0..k).collect();
        for i in (1..k).rev() {
            p.swap(i, rng.gen_range(0..=i));
        }
        p
    };
    let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { (0..k).map(|j| p[q[j]]).collect() };
    let id: Vec<usize> = (0..k).collect();
    let (group, table, perms) = if kind < 4 {
        let n = kind + 1;
        let s = loop {
            let s = perm(rng);
            let mut p = id.clone();
            for _ in 0..n {
                p = compose(&s, &p);
            }
            if p == id {
                break s;
            }
        };
        let mut perms = vec![id.clone()];
        for g in 1..n {
            perms.push(compose(&s, &perms[g - 1]));
        }
        (FiniteGroup::cyclic(n).unwrap(), cyclic_table(n), perms)
    } else {
        let (x, y) = loop {
            let x = perm(rng);
            let y = perm(rng);
            if compose(&x, &x) == id && compose(&y, &y) == id && compose(&x, &y) == compose(&y, &x) {
                break (x, y);
            }
        };
        let perms = vec![id.clone(), y.clone(), x.clone(), compose(&x, &y)];
        (FiniteGroup::product(&[2, 2]).unwrap(), klein_table(), perms)
    };
    let mut moduli = vec![0u64; k];
    for j in 0..k {
        if moduli[j] == 0 {
            let m = [2, 3, 4, 5][rng.gen_range(0..4)];
            for p in &perms {
                moduli[p[j]] = m;
            }
        }
    }
    let e: Vec<bool> = loop {
        let e: Vec<bool> = (0..k).map(|_| rng.gen_bool(0.7)).collect();
        if e.iter().any(|&b| b) {
            break e;
        }
    };
    let global = PartialAction::global(Ring::parse(&moduli).unwrap(), group, perms.clone()).unwrap();
    let a = global.restrict_global(&Idem(e.clone())).unwrap();
    (a, Oracle::restricted(&moduli, table, &perms, &e))
}
