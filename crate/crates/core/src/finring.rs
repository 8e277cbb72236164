//! Finite commutative rings presented as products of local rings `Z/p^k`.
//!
//! A [`Ring`] is always stored CRT-split: every component modulus is a prime
//! power, so the idempotents of the ring are exactly the 0/1 support vectors.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::abelian::FinAbGroup;
use crate::error::{Error, Result};

/// One local factor `Z/p^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub modulus: u64,
    pub prime: u64,
    pub exponent: u32,
    /// Index of the user-supplied modulus this component was split from.
    pub origin: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    components: Vec<Component>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct RingElem(pub Vec<u64>);

/// An idempotent of a product of local rings, given by its support.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Idem(pub Vec<bool>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl Ring {
    /// Builds a ring from user moduli, CRT-splitting composite moduli.
    pub fn parse(moduli: &[u64]) -> Result<Ring> {
        if moduli.is_empty() {
            return Err(Error::Validation("ring needs at least one component".into()));
        }
        let mut components = Vec::new();
        for (origin, &m) in moduli.iter().enumerate() {
            if m < 2 {
                return Err(Error::Validation(format!(
                    "component {origin}: modulus {m} is smaller than 2"
                )));
            }
            for (prime, exponent) in factorize(m) {
                components.push(Component {
                    modulus: prime.pow(exponent),
                    prime,
                    exponent,
                    origin,
                });
            }
        }
        Ok(Ring { components })
    }

    pub fn from_components(components: Vec<Component>) -> Result<Ring> {
        if components.is_empty() {
            return Err(Error::Validation("the zero ring is not supported".into()));
        }
        Ok(Ring { components })
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn moduli(&self) -> Vec<u64> {
        self.components.iter().map(|c| c.modulus).collect()
    }

    pub fn modulus(&self, i: usize) -> u64 {
        self.components[i].modulus
    }

    /// Number of elements, `prod p^k`.
    pub fn cardinality(&self) -> BigInt {
        self.components.iter().map(|c| BigInt::from(c.modulus)).product()
    }

    /// User component index -> split component indices.
    pub fn split_map(&self) -> Vec<Vec<usize>> {
        let n = self.components.iter().map(|c| c.origin + 1).max().unwrap_or(0);
        let mut out = vec![Vec::new(); n];
        for (i, c) in self.components.iter().enumerate() {
            out[c.origin].push(i);
        }
        out
    }

    /// Restriction to the components in the support of `e`, i.e. the ring `Re`.
    pub fn restrict(&self, e: &Idem) -> Result<Ring> {
        let comps: Vec<Component> = self
            .components
            .iter()
            .zip(&e.0)
            .filter(|(_, &s)| s)
            .map(|(c, _)| c.clone())
            .collect();
        Ring::from_components(comps)
    }

    pub fn elem(&self, residues: &[i64]) -> Result<RingElem> {
        if residues.len() != self.len() {
            return Err(Error::Arity { expected: self.len(), got: residues.len() });
        }
        Ok(RingElem(
            residues
                .iter()
                .zip(&self.components)
                .map(|(&r, c)| r.rem_euclid(c.modulus as i64) as u64)
                .collect(),
        ))
    }

    pub fn check(&self, x: &RingElem) -> Result<()> {
        if x.0.len() != self.len() {
            return Err(Error::Arity { expected: self.len(), got: x.0.len() });
        }
        for (i, (&r, c)) in x.0.iter().zip(&self.components).enumerate() {
            if r >= c.modulus {
                return Err(Error::Validation(format!(
                    "residue {r} at component {i} is not reduced modulo {}",
                    c.modulus
                )));
            }
        }
        Ok(())
    }

    pub fn zero(&self) -> RingElem {
        RingElem(vec![0; self.len()])
    }

    pub fn one(&self) -> RingElem {
        RingElem(vec![1; self.len()])
    }

    /// The primitive idempotent supported on component `i`.
    pub fn basis(&self, i: usize) -> RingElem {
        let mut v = vec![0; self.len()];
        v[i] = 1;
        RingElem(v)
    }

    /// Checked componentwise arithmetic; `y` is ignored for negation.
    pub fn arith(&self, op: ArithOp, x: &RingElem, y: &RingElem) -> Result<RingElem> {
        self.check(x)?;
        if op != ArithOp::Neg {
            self.check(y)?;
        }
        Ok(match op {
            ArithOp::Add => self.add(x, y),
            ArithOp::Mul => self.mul(x, y),
            ArithOp::Neg => self.neg(x),
        })
    }

    // The unchecked operations below assume both operands have the ring's
    // arity; they panic otherwise.

    pub fn add(&self, x: &RingElem, y: &RingElem) -> RingElem {
        assert_eq!(x.0.len(), self.len());
        assert_eq!(y.0.len(), self.len());
        RingElem(
            self.components
                .iter()
                .enumerate()
                .map(|(i, c)| (x.0[i] + y.0[i]) % c.modulus)
                .collect(),
        )
    }

    pub fn sub(&self, x: &RingElem, y: &RingElem) -> RingElem {
        self.add(x, &self.neg(y))
    }

    pub fn neg(&self, x: &RingElem) -> RingElem {
        RingElem(
            self.components
                .iter()
                .enumerate()
                .map(|(i, c)| (c.modulus - x.0[i]) % c.modulus)
                .collect(),
        )
    }

    pub fn mul(&self, x: &RingElem, y: &RingElem) -> RingElem {
        assert_eq!(x.0.len(), self.len());
        assert_eq!(y.0.len(), self.len());
        RingElem(
            self.components
                .iter()
                .enumerate()
                .map(|(i, c)| mulmod(x.0[i], y.0[i], c.modulus))
                .collect(),
        )
    }

    /// `k * x` for an integer `k`.
    pub fn scale(&self, k: i64, x: &RingElem) -> RingElem {
        RingElem(
            self.components
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let m = c.modulus as i128;
                    ((k as i128).rem_euclid(m) * x.0[i] as i128 % m) as u64
                })
                .collect(),
        )
    }

    pub fn cut(&self, x: &RingElem, e: &Idem) -> RingElem {
        RingElem(x.0.iter().zip(&e.0).map(|(&r, &s)| if s { r } else { 0 }).collect())
    }

    pub fn is_unit_component(&self, i: usize, r: u64) -> bool {
        !r.is_multiple_of(self.components[i].prime)
    }

    /// All idempotents, in lexicographic order of their support vectors.
    pub fn idempotents(&self) -> Vec<Idem> {
        let n = self.len();
        (0..1u64 << n)
            .map(|mask| Idem((0..n).map(|i| mask >> (n - 1 - i) & 1 == 1).collect()))
            .collect()
    }

    pub fn is_idempotent(&self, x: &RingElem) -> bool {
        self.mul(x, x) == *x
    }

    /// Reads an idempotent off a ring element, if it is one.
    pub fn as_idem(&self, x: &RingElem) -> Option<Idem> {
        if !self.is_idempotent(x) {
            return None;
        }
        Some(Idem(x.0.iter().map(|&r| r != 0).collect()))
    }

    /// The inverse of `x` inside the ideal `Re`, whose identity is `e`.
    pub fn inverse_in_ideal(&self, x: &RingElem, e: &Idem) -> Result<RingElem> {
        let mut out = vec![0; self.len()];
        for i in 0..self.len() {
            if e.0[i] {
                let m = self.components[i].modulus;
                out[i] = inv_mod(x.0[i], m).ok_or(Error::NotAUnit { component: i })?;
            } else if x.0[i] != 0 {
                return Err(Error::Validation(format!(
                    "element has nonzero residue at component {i} outside the ideal"
                )));
            }
        }
        Ok(RingElem(out))
    }

    pub fn is_unit_in(&self, x: &RingElem, e: &Idem) -> bool {
        self.inverse_in_ideal(x, e).is_ok()
    }

    pub fn unit_group(&self, e: &Idem) -> UnitGroup {
        UnitGroup::new(self, e)
    }

    /// Enumerates every element of the ring (small rings only).
    pub fn elements(&self) -> impl Iterator<Item = RingElem> + '_ {
        let moduli = self.moduli();
        let total: u64 = moduli.iter().product();
        (0..total).map(move |mut k| {
            let mut v = vec![0; moduli.len()];
            for i in (0..moduli.len()).rev() {
                v[i] = k % moduli[i];
                k /= moduli[i];
            }
            RingElem(v)
        })
    }

    pub fn additive_group(&self) -> FinAbGroup {
        FinAbGroup::diagonal(&self.moduli())
    }

    pub fn to_coords(&self, x: &RingElem) -> Vec<BigInt> {
        x.0.iter().map(|&r| BigInt::from(r)).collect()
    }

    pub fn from_coords(&self, v: &[BigInt]) -> RingElem {
        RingElem(
            v.iter()
                .zip(&self.components)
                .map(|(r, c)| {
                    let m = BigInt::from(c.modulus);
                    let r = ((r % &m) + &m) % &m;
                    u64::try_from(r).expect("reduced residue fits in u64")
                })
                .collect(),
        )
    }
}

impl Idem {
    pub fn full(n: usize) -> Idem {
        Idem(vec![true; n])
    }

    pub fn zero(n: usize) -> Idem {
        Idem(vec![false; n])
    }

    pub fn meet(&self, other: &Idem) -> Idem {
        Idem(self.0.iter().zip(&other.0).map(|(a, b)| *a && *b).collect())
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, &s)| s).map(|(i, _)| i).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|s| !s)
    }

    pub fn le(&self, other: &Idem) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| !a || *b)
    }

    pub fn to_elem(&self) -> RingElem {
        RingElem(self.0.iter().map(|&s| s as u64).collect())
    }

    pub fn from_support(n: usize, support: &[usize]) -> Idem {
        let mut v = vec![false; n];
        for &i in support {
            v[i] = true;
        }
        Idem(v)
    }

    pub fn bits(&self) -> Vec<u8> {
        self.0.iter().map(|&s| s as u8).collect()
    }
}

impl RingElem {
    /// `x * e == x`.
    pub fn lies_in(&self, e: &Idem) -> bool {
        self.0.iter().zip(&e.0).all(|(&r, &s)| s || r == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&r| r == 0)
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Idem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_elem())
    }
}

pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

fn mult_order(g: u64, m: u64) -> u64 {
    let mut x = g % m;
    let mut k = 1;
    while x != 1 {
        x = mulmod(x, g, m);
        k += 1;
    }
    k
}

/// One cyclic factor of a unit group: a generator living in one component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitGenerator {
    pub component: usize,
    pub value: u64,
    pub order: u64,
}

/// The unit group of an ideal `Re` with explicit generators and discrete log.
///
/// Generators are listed component by component; components with trivial
/// unit group contribute nothing.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    moduli: Vec<u64>,
    support: Idem,
    generators: Vec<UnitGenerator>,
    group: FinAbGroup,
}

impl UnitGroup {
    fn new(ring: &Ring, e: &Idem) -> UnitGroup {
        let mut generators = Vec::new();
        for i in e.support() {
            let c = &ring.components[i];
            let m = c.modulus;
            if c.prime == 2 {
                match c.exponent {
                    1 => {}
                    2 => generators.push(UnitGenerator { component: i, value: 3, order: 2 }),
                    k => {
                        generators.push(UnitGenerator { component: i, value: m - 1, order: 2 });
                        generators.push(UnitGenerator {
                            component: i,
                            value: 3,
                            order: 1 << (k - 2),
                        });
                    }
                }
            } else {
                let phi = c.prime.pow(c.exponent - 1) * (c.prime - 1);
                if phi > 1 {
                    let g = (2..m)
                        .find(|&g| g % c.prime != 0 && mult_order(g, m) == phi)
                        .expect("Z/p^k has a primitive root for odd p");
                    generators.push(UnitGenerator { component: i, value: g, order: phi });
                }
            }
        }
        let orders: Vec<u64> = generators.iter().map(|g| g.order).collect();
        UnitGroup {
            moduli: ring.moduli(),
            support: e.clone(),
            generators,
            group: FinAbGroup::diagonal(&orders),
        }
    }

    pub fn generators(&self) -> &[UnitGenerator] {
        &self.generators
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn support(&self) -> &Idem {
        &self.support
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// The identity element `e` of the ideal.
    pub fn identity(&self) -> RingElem {
        self.support.to_elem()
    }

    pub fn order(&self) -> BigInt {
        self.generators.iter().map(|g| BigInt::from(g.order)).product()
    }

    /// Ring element of the `k`-th generator.
    pub fn generator_elem(&self, k: usize) -> RingElem {
        let mut v = self.identity();
        let g = &self.generators[k];
        v.0[g.component] = g.value;
        v
    }

    pub fn exp(&self, v: &[i64]) -> RingElem {
        let mut out = self.identity();
        for (g, &k) in self.generators.iter().zip(v) {
            let m = self.moduli[g.component];
            let k = k.rem_euclid(g.order as i64) as u64;
            out.0[g.component] = mulmod(out.0[g.component], powmod(g.value, k, m), m);
        }
        out
    }

    pub fn exp_big(&self, v: &[BigInt]) -> RingElem {
        let small: Vec<i64> = self
            .generators
            .iter()
            .zip(v)
            .map(|(g, k)| {
                let o = BigInt::from(g.order);
                i64::try_from(((k % &o) + &o) % &o).expect("exponent fits")
            })
            .collect();
        self.exp(&small)
    }

    /// Exponent vector of `x` with respect to the generators.
    pub fn dlog(&self, x: &RingElem) -> Result<Vec<i64>> {
        for (i, &r) in x.0.iter().enumerate() {
            let inside = self.support.0[i];
            let m = self.moduli[i];
            if !inside && r != 0 {
                return Err(Error::Domain(format!(
                    "residue at component {i} lies outside the ideal"
                )));
            }
            if inside && inv_mod(r, m).is_none() {
                return Err(Error::NotAUnit { component: i });
            }
        }
        let mut out = vec![0i64; self.generators.len()];
        let mut k = 0;
        while k < self.generators.len() {
            let comp = self.generators[k].component;
            let m = self.moduli[comp];
            let target = x.0[comp];
            let same: Vec<usize> = (k..self.generators.len())
                .take_while(|&j| self.generators[j].component == comp)
                .collect();
            if same.len() == 1 {
                let g = &self.generators[k];
                let mut acc = 1 % m;
                let mut found = None;
                for j in 0..g.order {
                    if acc == target {
                        found = Some(j);
                        break;
                    }
                    acc = mulmod(acc, g.value, m);
                }
                out[k] = found.ok_or_else(|| {
                    Error::Domain(format!("{target} is not a power of {} mod {m}", g.value))
                })? as i64;
            } else {
                // Z/2^k with k >= 3: x = (-1)^a 3^b.
                let (gm, g3) = (&self.generators[k], &self.generators[k + 1]);
                let mut found = None;
                'outer: for a in 0..gm.order {
                    let sign = powmod(gm.value, a, m);
                    let mut acc = sign;
                    for b in 0..g3.order {
                        if acc == target {
                            found = Some((a, b));
                            break 'outer;
                        }
                        acc = mulmod(acc, g3.value, m);
                    }
                }
                let (a, b) = found
                    .ok_or_else(|| Error::Domain(format!("{target} is not a unit mod {m}")))?;
                out[k] = a as i64;
                out[k + 1] = b as i64;
            }
            k += same.len();
        }
        Ok(out)
    }
}
