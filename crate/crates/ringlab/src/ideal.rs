//! Two-sided ideals, quotient rings and the Jacobson radical.
//!
//! Ideals are element subsets validated (or produced) as closed under
//! addition and under multiplication by arbitrary ring elements on both
//! sides. Enumeration of *all* ideals works because every two-sided ideal
//! of a finite unital ring is a finite sum of principal ideals: we take the
//! principal ideal of every element and close that collection under
//! pairwise ideal sums until nothing new appears.

use crate::ring::{Elem, ElementSet, FiniteRing, RingError};

/// Default cap on how many ideals [`all_ideals`] may enumerate.
pub const DEFAULT_IDEAL_CAP: usize = 4096;

/// A verified two-sided ideal of a specific ring, represented by its member
/// set. Only this module creates values of this type, so holding one is
/// proof the closure properties were checked (or hold by construction).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealSet {
    members: ElementSet,
}

impl IdealSet {
    /// Validate an arbitrary subset as a two-sided ideal: must contain
    /// zero, be closed under addition, and absorb multiplication by every
    /// ring element on both sides.
    pub fn from_set(ring: &FiniteRing, set: ElementSet) -> Result<IdealSet, RingError> {
        if set.universe() != ring.order() {
            return Err(RingError::NotAnIdeal(format!(
                "set universe {} does not match ring order {}",
                set.universe(),
                ring.order()
            )));
        }
        if !set.contains(ring.zero()) {
            return Err(RingError::NotAnIdeal("zero is missing".into()));
        }
        for a in set.iter() {
            for b in set.iter() {
                if !set.contains(ring.add(a, b)) {
                    return Err(RingError::NotAnIdeal(format!(
                        "not closed under addition: {a}+{b}"
                    )));
                }
            }
            for r in ring.elements() {
                if !set.contains(ring.mul(r, a)) {
                    return Err(RingError::NotAnIdeal(format!(
                        "not closed under left multiplication: {r}*{a}"
                    )));
                }
                if !set.contains(ring.mul(a, r)) {
                    return Err(RingError::NotAnIdeal(format!(
                        "not closed under right multiplication: {a}*{r}"
                    )));
                }
            }
        }
        Ok(IdealSet { members: set })
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false // an ideal always contains zero
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.iter()
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.members.to_vec()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.members.len() == 1
    }

    /// Short display form: the member list, truncated past eight entries.
    pub fn brief(&self) -> String {
        let v = self.to_vec();
        if v.len() <= 8 {
            format!("{v:?}")
        } else {
            let head: Vec<Elem> = v[..8].to_vec();
            format!("[{} members, first {head:?}]", v.len())
        }
    }
}

/// Additive closure of a generating set that is already closed under
/// multiplication by ring elements; the result is then an ideal.
fn additive_closure(ring: &FiniteRing, gens: &ElementSet) -> ElementSet {
    let mut closed = gens.clone();
    closed.insert(ring.zero());
    let mut frontier: Vec<Elem> = closed.to_vec();
    while let Some(x) = frontier.pop() {
        for g in gens.iter() {
            let s = ring.add(x, g);
            if !closed.contains(s) {
                closed.insert(s);
                frontier.push(s);
            }
        }
    }
    closed
}

/// The two-sided ideal generated by `a`: the additive closure of
/// `{ r*a*s : r, s in R }`.
pub fn principal_ideal(ring: &FiniteRing, a: Elem) -> IdealSet {
    let mut gens = ElementSet::empty(ring.order());
    for r in ring.elements() {
        let ra = ring.mul(r, a);
        for s in ring.elements() {
            gens.insert(ring.mul(ra, s));
        }
    }
    IdealSet {
        members: additive_closure(ring, &gens),
    }
}

/// Sum of two ideals: additive closure of the union.
pub fn ideal_sum(ring: &FiniteRing, i: &IdealSet, j: &IdealSet) -> IdealSet {
    let mut gens = i.members.clone();
    gens.union_with(&j.members);
    IdealSet {
        members: additive_closure(ring, &gens),
    }
}

/// Every two-sided ideal of the ring, sorted by size and then by member
/// list. Fails with `BoundExceeded` if more than `cap` ideals show up.
pub fn all_ideals(ring: &FiniteRing, cap: usize) -> Result<Vec<IdealSet>, RingError> {
    let mut found: Vec<IdealSet> = Vec::new();
    let push_new = |ideal: IdealSet, found: &mut Vec<IdealSet>| -> bool {
        if found.iter().any(|k| k.members == ideal.members) {
            false
        } else {
            found.push(ideal);
            true
        }
    };
    for a in ring.elements() {
        let p = principal_ideal(ring, a);
        push_new(p, &mut found);
        if found.len() > cap {
            return Err(RingError::BoundExceeded {
                what: "ideal count",
                actual: found.len(),
                cap,
            });
        }
    }
    // Close under pairwise sums. New ideals are appended and themselves
    // summed against everything until a fixpoint.
    let mut i = 0;
    while i < found.len() {
        let mut j = 0;
        while j < i {
            let s = ideal_sum(ring, &found[i], &found[j]);
            if push_new(s, &mut found) && found.len() > cap {
                return Err(RingError::BoundExceeded {
                    what: "ideal count",
                    actual: found.len(),
                    cap,
                });
            }
            j += 1;
        }
        i += 1;
    }
    found.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.to_vec().cmp(&b.to_vec()))
    });
    Ok(found)
}

/// The quotient ring `R/I` on coset representatives. Each coset is named
/// by its least element index; representatives are sorted ascending and
/// renumbered `0..order/|I|`. The projection of the original tables is a
/// ring, and the construction re-validates it.
pub fn quotient(ring: &FiniteRing, ideal: &IdealSet) -> Result<FiniteRing, RingError> {
    let n = ring.order();
    // Least representative of each coset x + I.
    let mut rep = vec![Elem::MAX; n];
    for x in ring.elements() {
        let mut least = x;
        for i in ideal.iter() {
            let y = ring.add(x, i);
            if y < least {
                least = y;
            }
        }
        rep[x as usize] = least;
    }
    let mut reps: Vec<Elem> = rep.to_vec();
    reps.sort_unstable();
    reps.dedup();
    let index_of = |x: Elem| reps.binary_search(&x).expect("coset rep must be listed") as Elem;

    let q = reps.len();
    let mut add = Vec::with_capacity(q * q);
    let mut mul = Vec::with_capacity(q * q);
    for &a in &reps {
        for &b in &reps {
            add.push(index_of(rep[ring.add(a, b) as usize]));
            mul.push(index_of(rep[ring.mul(a, b) as usize]));
        }
    }
    let zero = index_of(rep[ring.zero() as usize]);
    let one = index_of(rep[ring.one() as usize]);
    let names = reps
        .iter()
        .map(|&r| format!("[{}]", ring.elem_name(r)))
        .collect();
    FiniteRing::from_tables(
        format!("{}/{}", ring.name(), ideal.brief()),
        add,
        mul,
        zero,
        one,
        Some(names),
    )
}

/// Jacobson radical: `{ a : 1 - r*a is a unit for every r }`.
pub fn jacobson_radical(ring: &FiniteRing) -> ElementSet {
    let units = ring.units();
    let mut rad = ElementSet::empty(ring.order());
    for a in ring.elements() {
        if ring
            .elements()
            .all(|r| units.contains(ring.sub(ring.one(), ring.mul(r, a))))
        {
            rad.insert(a);
        }
    }
    rad
}

/// Is the ideal reduced as a ring-without-identity? Powers of an ideal
/// member stay inside the ideal and agree with powers taken in `R`, so
/// this is exactly "no nonzero member of `I` is nilpotent in `R`".
pub fn is_reduced_as_rng(ring: &FiniteRing, ideal: &IdealSet) -> bool {
    ideal
        .iter()
        .all(|a| a == ring.zero() || !ring.is_nilpotent(a))
}

/// Elementwise product set `{ a*b : a in A, b in B }` (no additive
/// closure). `A*B = 0` questions only need the generators.
pub fn set_product(ring: &FiniteRing, a: &ElementSet, b: &ElementSet) -> ElementSet {
    let mut out = ElementSet::empty(ring.order());
    for x in a.iter() {
        for y in b.iter() {
            out.insert(ring.mul(x, y));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::tests_support::zmod;

    fn zmod_ring(n: usize) -> FiniteRing {
        zmod(n)
    }

    #[test]
    fn principal_ideals_of_z6() {
        let r = zmod_ring(6);
        assert_eq!(principal_ideal(&r, 0).to_vec(), vec![0]);
        assert_eq!(principal_ideal(&r, 2).to_vec(), vec![0, 2, 4]);
        assert_eq!(principal_ideal(&r, 3).to_vec(), vec![0, 3]);
        assert_eq!(principal_ideal(&r, 1).len(), 6);
        // 4 generates the same ideal as 2; 5 is a unit.
        assert_eq!(principal_ideal(&r, 4), principal_ideal(&r, 2));
        assert_eq!(principal_ideal(&r, 5).len(), 6);
    }

    #[test]
    fn all_ideals_of_zmods_match_divisor_count() {
        // Oracle: ideals of Z_n are dZ_n for divisors d of n.
        for n in [2usize, 4, 6, 8, 9, 12] {
            let r = zmod_ring(n);
            let ideals = all_ideals(&r, DEFAULT_IDEAL_CAP).unwrap();
            let divisors = (1..=n).filter(|d| n % d == 0).count();
            assert_eq!(ideals.len(), divisors, "Z_{n}");
            // Sorted by size: first is {0}, last is R.
            assert!(ideals.first().unwrap().is_zero_ideal());
            assert_eq!(ideals.last().unwrap().len(), n);
        }
    }

    #[test]
    fn quotient_z12_by_4z12_is_z4() {
        let r = zmod_ring(12);
        let i = IdealSet::from_set(&r, crate::ring::ElementSet::from_iter(12, [0, 4, 8])).unwrap();
        let q = quotient(&r, &i).unwrap();
        assert_eq!(q.order(), 4);
        let z4 = zmod_ring(4);
        // Reps are 0..3 with the induced (mod 4) arithmetic.
        for a in q.elements() {
            for b in q.elements() {
                assert_eq!(q.add(a, b), z4.add(a, b));
                assert_eq!(q.mul(a, b), z4.mul(a, b));
            }
        }
    }

    #[test]
    fn quotient_projection_is_a_homomorphism() {
        let r = zmod_ring(8);
        for ideal in all_ideals(&r, 64).unwrap() {
            let q = quotient(&r, &ideal).unwrap();
            // pi(x) = index of least rep of x + I; recompute here.
            let pi = |x: Elem| -> Elem {
                let least = ideal.iter().map(|i| r.add(x, i)).min().unwrap();
                (0..q.order() as Elem)
                    .find(|&k| q.elem_name(k) == format!("[{}]", r.elem_name(least)))
                    .unwrap()
            };
            for a in r.elements() {
                for b in r.elements() {
                    assert_eq!(pi(r.add(a, b)), q.add(pi(a), pi(b)));
                    assert_eq!(pi(r.mul(a, b)), q.mul(pi(a), pi(b)));
                }
            }
        }
    }

    #[test]
    fn non_ideals_are_rejected() {
        let r = zmod_ring(6);
        // {0,1}: not closed under addition (1+1=2) nor multiplication.
        assert!(IdealSet::from_set(&r, ElementSet::from_iter(6, [0, 1])).is_err());
        // Missing zero.
        assert!(IdealSet::from_set(&r, ElementSet::from_iter(6, [2, 4])).is_err());
    }

    #[test]
    fn jacobson_radical_of_zmods() {
        // Oracle: J(Z_n) = rad(n)Z_n, generated by the product of the
        // distinct primes dividing n.
        let cases = [(4usize, vec![0, 2]), (6, vec![0]), (8, vec![0, 2, 4, 6]),
            (9, vec![0, 3, 6]), (12, vec![0, 6])];
        for (n, expected) in cases {
            let r = zmod_ring(n);
            assert_eq!(jacobson_radical(&r).to_vec(), expected, "J(Z_{n})");
        }
    }

    #[test]
    fn radical_of_quotient_by_radical_is_zero() {
        for n in [4usize, 8, 9, 12] {
            let r = zmod_ring(n);
            let rad = IdealSet::from_set(&r, jacobson_radical(&r)).unwrap();
            let q = quotient(&r, &rad).unwrap();
            assert_eq!(jacobson_radical(&q).to_vec(), vec![q.zero()]);
        }
    }

    #[test]
    fn reduced_as_rng_detects_nilpotent_members() {
        let r = zmod_ring(8);
        let whole = IdealSet::from_set(&r, ElementSet::full(8)).unwrap();
        assert!(!is_reduced_as_rng(&r, &whole)); // 2 is nilpotent
        let zero = IdealSet::from_set(&r, ElementSet::from_iter(8, [0])).unwrap();
        assert!(is_reduced_as_rng(&r, &zero));
        let z6 = zmod_ring(6);
        let i = IdealSet::from_set(&z6, ElementSet::from_iter(6, [0, 2, 4])).unwrap();
        assert!(is_reduced_as_rng(&z6, &i));
    }

    #[test]
    fn set_product_powers() {
        let r = zmod_ring(8);
        let i = ElementSet::from_iter(8, [0, 2, 4, 6]);
        let sq = set_product(&r, &i, &i);
        assert_eq!(sq.to_vec(), vec![0, 4]);
        let cube = set_product(&r, &sq, &i);
        assert_eq!(cube.to_vec(), vec![0]);
    }

    #[test]
    fn zmod_helper_is_consistent() {
        let r = zmod(5);
        assert_eq!(r.order(), 5);
    }
}
