//! Small actions used throughout the test suites and the CLI examples.

use crate::finring::{Idem, Ring, RingElem};
use crate::group::FiniteGroup;
use crate::paction::{PartialAction, Twisting};

/// `C_2` swapping the two factors of `(Z/3)^2`.
pub fn fix_a() -> PartialAction {
    let ring = Ring::parse(&[3, 3]).unwrap();
    let group = FiniteGroup::cyclic(2).unwrap();
    PartialAction::global(ring, group, vec![vec![0, 1], vec![1, 0]]).unwrap()
}

/// Twisting on [`fix_a`] with `omega(s,s)` set to `value`.
pub fn fix_a_twist(value: [u64; 2]) -> Twisting {
    let a = fix_a();
    Twisting::with_entries(&a, &[(1, 1, RingElem(value.to_vec()))]).unwrap()
}

/// The cyclic shift of `C_4` on `(Z/3)^4`.
pub fn fix_b_global() -> PartialAction {
    let ring = Ring::parse(&[3, 3, 3, 3]).unwrap();
    let group = FiniteGroup::cyclic(4).unwrap();
    PartialAction::global_from_generators(ring, group, vec![vec![1, 2, 3, 0]]).unwrap()
}

/// [`fix_b_global`] restricted to the first three factors.
pub fn fix_b() -> PartialAction {
    fix_b_global().restrict_global(&Idem(vec![true, true, true, false])).unwrap()
}

/// The trivial group acting on the given ring.
pub fn trivial_group_on(moduli: &[u64]) -> PartialAction {
    let ring = Ring::parse(moduli).unwrap();
    let n = ring.len();
    PartialAction::global(ring, FiniteGroup::trivial(), vec![(0..n).collect()]).unwrap()
}

/// `C_2` acting trivially on `Z/3`: a global action that is not Galois.
pub fn non_galois() -> PartialAction {
    let ring = Ring::parse(&[3]).unwrap();
    PartialAction::global(ring, FiniteGroup::cyclic(2).unwrap(), vec![vec![0], vec![0]]).unwrap()
}
