//! Partial Galois certification: coordinate systems, projectivity of `R`
//! over `R^alpha`, the ring `End_{R^alpha}(R)` and the map `j`.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::abelian::{FinAbGroup, GroupHom, Subgroup};
use crate::algebra::FiniteAlgebra;
use crate::crossed::{CrossedRing, JMapReport};
use crate::error::{Error, Result};
use crate::finring::{Idem, Ring, RingElem};
use crate::paction::{PartialAction, SubringDescriptor};

/// An additive endomorphism of `R`: column `j` is the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EndMatrix(pub Vec<Vec<u64>>);

/// `End_{R^alpha}(R)` inside the group of all additive endomorphisms.
///
/// An additive map `Z/m_j -> Z/m_i` is multiplication by a multiple of
/// `m_i / gcd(m_i, m_j)`; the coordinate of entry `(i, j)` counts that
/// multiple modulo `gcd(m_i, m_j)`.
#[derive(Clone, Debug)]
pub struct EndRing {
    ring: Ring,
    gcds: Vec<Vec<u64>>,
    ambient: FinAbGroup,
    carrier: Subgroup,
}

impl EndRing {
    pub fn new(ring: &Ring, invariants: &SubringDescriptor) -> EndRing {
        let c = ring.len();
        let m = ring.moduli();
        let gcds: Vec<Vec<u64>> = (0..c).map(|i| (0..c).map(|j| m[i].gcd(&m[j])).collect()).collect();
        let ambient = FinAbGroup::diagonal(&gcds.concat());
        let gens = invariants.generators();
        let target_orders: Vec<u64> = (0..gens.len())
            .flat_map(|_| (0..c).flat_map(|i| std::iter::repeat_n(m[i], c)).collect::<Vec<_>>())
            .collect();
        let target = FinAbGroup::diagonal(&target_orders);
        let mut images = Vec::with_capacity(c * c);
        for i in 0..c {
            for j in 0..c {
                let step = m[i] / gcds[i][j];
                let mut v = vec![BigInt::from(0); target_orders.len()];
                for (k, s) in gens.iter().enumerate() {
                    let diff = BigInt::from(s.0[j]) - BigInt::from(s.0[i]);
                    v[k * c * c + i * c + j] = diff * BigInt::from(step);
                }
                images.push(v);
            }
        }
        let hom = GroupHom::from_images(ambient.clone(), target, &images)
            .expect("commutation constraints are additive");
        EndRing { ring: ring.clone(), gcds, ambient, carrier: hom.kernel() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Matrix of an additive map given as a function on `R`.
    pub fn matrix_of(&self, f: impl Fn(&RingElem) -> RingElem) -> EndMatrix {
        let c = self.ring.len();
        let cols: Vec<RingElem> = (0..c).map(|j| f(&self.ring.basis(j))).collect();
        EndMatrix((0..c).map(|i| (0..c).map(|j| cols[j].0[i]).collect()).collect())
    }

    pub fn apply(&self, e: &EndMatrix, r: &RingElem) -> RingElem {
        let c = self.ring.len();
        RingElem(
            (0..c)
                .map(|i| {
                    let m = self.ring.modulus(i) as u128;
                    ((0..c).map(|j| e.0[i][j] as u128 * r.0[j] as u128 % m).sum::<u128>() % m)
                        as u64
                })
                .collect(),
        )
    }

    /// `e o f`.
    pub fn compose(&self, e: &EndMatrix, f: &EndMatrix) -> EndMatrix {
        let c = self.ring.len();
        EndMatrix(
            (0..c)
                .map(|i| {
                    let m = self.ring.modulus(i) as u128;
                    (0..c)
                        .map(|k| {
                            ((0..c).map(|j| e.0[i][j] as u128 * f.0[j][k] as u128 % m).sum::<u128>()
                                % m) as u64
                        })
                        .collect()
                })
                .collect(),
        )
    }

    /// Additive and `R^alpha`-linear.
    pub fn contains(&self, e: &EndMatrix) -> bool {
        let c = self.ring.len();
        for i in 0..c {
            for j in 0..c {
                let step = self.ring.modulus(i) / self.gcds[i][j];
                if !e.0[i][j].is_multiple_of(step) {
                    return false;
                }
            }
        }
        self.carrier.contains(&self.coords(e))
    }
}

impl FiniteAlgebra for EndRing {
    type Elem = EndMatrix;

    fn ambient(&self) -> FinAbGroup {
        self.ambient.clone()
    }

    fn carrier(&self) -> Subgroup {
        self.carrier.clone()
    }

    fn coords(&self, e: &EndMatrix) -> Vec<BigInt> {
        let c = self.ring.len();
        let mut out = Vec::with_capacity(c * c);
        for i in 0..c {
            for j in 0..c {
                let step = self.ring.modulus(i) / self.gcds[i][j];
                out.push(BigInt::from(e.0[i][j] / step));
            }
        }
        out
    }

    fn from_coords(&self, v: &[BigInt]) -> EndMatrix {
        let c = self.ring.len();
        let v = self.ambient.canonical(v);
        EndMatrix(
            (0..c)
                .map(|i| {
                    (0..c)
                        .map(|j| {
                            let step = self.ring.modulus(i) / self.gcds[i][j];
                            u64::try_from(&v[i * c + j]).expect("reduced") * step
                        })
                        .collect()
                })
                .collect(),
        )
    }

    fn mul(&self, x: &EndMatrix, y: &EndMatrix) -> EndMatrix {
        self.compose(x, y)
    }

    fn one(&self) -> EndMatrix {
        self.matrix_of(|r| r.clone())
    }

    fn describe(&self, x: &EndMatrix) -> String {
        format!("{:?}", x.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoordinateReport {
    pub passed: bool,
    /// `sum_i x_i alpha_g(y_i 1_{g^-1})` per group element.
    pub sums: Vec<Vec<u64>>,
    pub failing: Option<String>,
}

/// `sum_i x_i alpha_g(y_i 1_{g^-1}) = delta_{1,g}` for every `g`.
pub fn coordinate_check(a: &PartialAction, xs: &[RingElem], ys: &[RingElem]) -> Result<CoordinateReport> {
    if xs.len() != ys.len() {
        return Err(Error::Validation(format!(
            "coordinate lists differ in length ({} and {})",
            xs.len(),
            ys.len()
        )));
    }
    let ring = a.ring();
    for x in xs.iter().chain(ys) {
        ring.check(x)?;
    }
    let mut sums = Vec::new();
    let mut failing = None;
    for g in a.group().elements() {
        let s = xs
            .iter()
            .zip(ys)
            .fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, &a.apply_cut(g, y))));
        let expected = if g == 0 { ring.one() } else { ring.zero() };
        if s != expected && failing.is_none() {
            failing = Some(a.group().label(g).to_string());
        }
        sums.push(s.0);
    }
    Ok(CoordinateReport { passed: failing.is_none(), sums, failing })
}

/// Searches coordinate systems `x_i = y_i = E_i` where the `E_i` run over
/// the blocks of a partition of the components, finest partition first.
/// At most `cap` partitions are tried.
pub fn coordinate_search(a: &PartialAction, cap: usize) -> Option<(Vec<RingElem>, Vec<RingElem>)> {
    let c = a.ring().len();
    let mut tried = 0;
    let mut found = None;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn rec(
        a: &PartialAction,
        k: usize,
        c: usize,
        blocks: &mut Vec<Vec<usize>>,
        tried: &mut usize,
        cap: usize,
        found: &mut Option<(Vec<RingElem>, Vec<RingElem>)>,
    ) {
        if found.is_some() || *tried >= cap {
            return;
        }
        if k == c {
            *tried += 1;
            let xs: Vec<RingElem> =
                blocks.iter().map(|b| Idem::from_support(c, b).to_elem()).collect();
            if coordinate_check(a, &xs, &xs).map(|r| r.passed).unwrap_or(false) {
                *found = Some((xs.clone(), xs));
            }
            return;
        }
        blocks.push(vec![k]);
        rec(a, k + 1, c, blocks, tried, cap, found);
        blocks.pop();
        for i in 0..blocks.len() {
            blocks[i].push(k);
            rec(a, k + 1, c, blocks, tried, cap, found);
            blocks[i].pop();
        }
    }
    rec(a, 0, c, &mut blocks, &mut tried, cap, &mut found);
    found
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalFactor {
    /// Primitive idempotent of `R^alpha`, as a support over `R`.
    pub idempotent: Vec<u8>,
    pub local_order: String,
    pub residue_field: String,
    pub module_order: String,
    pub minimal_generators: u32,
    pub free: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FgpReport {
    pub passed: bool,
    pub factors: Vec<LocalFactor>,
}

/// Minimal nonzero idempotents of `R` lying in `R^alpha`.
pub fn primitive_invariant_idempotents(invariants: &SubringDescriptor) -> Vec<Idem> {
    let idems: Vec<Idem> = invariants.idempotents().into_iter().filter(|e| !e.is_zero()).collect();
    idems
        .iter()
        .filter(|e| !idems.iter().any(|f| f != *e && f.le(e)))
        .cloned()
        .collect()
}

/// `R f` is free over each local factor `L = R^alpha f`: with `m` the maximal
/// ideal of `L` and `q = |L/m|`, the minimal number of generators is
/// `log_q |Rf / m Rf|` and freeness is `|Rf| = |L|^that`.
pub fn fgp_report(a: &PartialAction, invariants: &SubringDescriptor) -> FgpReport {
    let ring = a.ring();
    let mut factors = Vec::new();
    let all = invariants.elements();
    for f in primitive_invariant_idempotents(invariants) {
        let local: Vec<RingElem> = {
            let mut v: Vec<RingElem> = all.iter().map(|x| ring.cut(x, &f)).collect();
            v.sort();
            v.dedup();
            v
        };
        let nilpotent: Vec<Vec<BigInt>> = local
            .iter()
            .filter(|x| {
                x.0.iter().enumerate().all(|(i, &r)| r % ring.components()[i].prime == 0)
            })
            .map(|x| ring.to_coords(x))
            .collect();
        let add = ring.additive_group();
        let maximal = Subgroup::generated(&add, &nilpotent);
        let local_order = BigInt::from(local.len());
        let q = &local_order / maximal.order();
        let support = f.support();
        let module_order: BigInt = support.iter().map(|&i| BigInt::from(ring.modulus(i))).product();
        let m_rf: Vec<Vec<BigInt>> = maximal
            .generators()
            .iter()
            .flat_map(|mg| {
                let mg = ring.from_coords(mg);
                support.iter().map(move |&i| (mg.clone(), i)).collect::<Vec<_>>()
            })
            .map(|(mg, i)| ring.to_coords(&ring.mul(&mg, &ring.basis(i))))
            .collect();
        let m_rf = Subgroup::generated(&add, &m_rf);
        let top = &module_order / m_rf.order();
        let mut mu = 0u32;
        let mut acc = BigInt::from(1);
        while acc < top {
            acc *= &q;
            mu += 1;
        }
        let free = acc == top && local_order.pow(mu) == module_order;
        factors.push(LocalFactor {
            idempotent: f.bits(),
            local_order: local_order.to_string(),
            residue_field: q.to_string(),
            module_order: module_order.to_string(),
            minimal_generators: mu,
            free,
        });
    }
    FgpReport { passed: factors.iter().all(|f| f.free), factors }
}

#[derive(Clone, Debug, Serialize)]
pub struct GaloisCertificate {
    pub galois: bool,
    pub coordinates: Option<CoordinateReport>,
    pub fgp: FgpReport,
    pub j: JMapReport,
    pub invariant_order: String,
    pub witness: Option<String>,
}

impl GaloisCertificate {
    /// Ranks of `R` over the local factors of `R^alpha`.
    pub fn rank_profile(&self) -> Vec<u32> {
        self.fgp.factors.iter().map(|f| f.minimal_generators).collect()
    }
}

pub fn end_ring(a: &PartialAction) -> EndRing {
    EndRing::new(a.ring(), &a.invariant_subring())
}

/// Projectivity over `R^alpha` and bijectivity of `j`; optional coordinates
/// are checked and reported but do not enter the verdict.
pub fn galois_certificate(
    a: &PartialAction,
    coordinates: Option<(&[RingElem], &[RingElem])>,
) -> Result<GaloisCertificate> {
    let invariants = a.invariant_subring();
    let fgp = fgp_report(a, &invariants);
    let end = EndRing::new(a.ring(), &invariants);
    let cr = CrossedRing::untwisted(a.clone());
    let j = cr.j_map(&end)?;
    let coordinates = match coordinates {
        Some((xs, ys)) => Some(coordinate_check(a, xs, ys)?),
        None => None,
    };
    let witness = if !fgp.passed {
        let bad = fgp.factors.iter().find(|f| !f.free).expect("a non-free factor");
        Some(format!(
            "R is not free over the local factor at {:?}: |Rf| = {} but |L| = {} and {} generators are needed",
            bad.idempotent, bad.module_order, bad.local_order, bad.minimal_generators
        ))
    } else if !j.is_iso {
        Some(format!(
            "j is not bijective: |R*G| = {}, |End| = {}, |ker j| = {}",
            j.crossed_order, j.end_order, j.kernel_order
        ))
    } else {
        None
    };
    Ok(GaloisCertificate {
        galois: witness.is_none(),
        coordinates,
        fgp,
        j,
        invariant_order: invariants.order().to_string(),
        witness,
    })
}

/// `sum_g alpha_g(r 1_{g^-1})`, which always lies in `R^alpha`.
pub fn trace_map(a: &PartialAction, r: &RingElem) -> RingElem {
    let t = a.trace(r);
    debug_assert!(a.is_invariant(&t));
    t
}
