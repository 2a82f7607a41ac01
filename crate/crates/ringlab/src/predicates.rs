//! Decision procedures for zero-product reflexivity conditions.
//!
//! Each decider scans quantifiers in ascending element order, outermost
//! first, following the order the witness roles are listed in. The first
//! violation found is therefore the lexicographically least witness in
//! role order, which makes reports reproducible run to run. Every verdict
//! produced here survives [`crate::verdict::replay`].
//!
//! The expensive shared ingredient is the zero-sandwich table
//! `aRb = 0`, built once per [`Scanner`] and reused by everything in the
//! reflexive family, so deciding all properties of one ring costs little
//! more than deciding one.

use crate::ideal::{all_ideals, jacobson_radical, principal_ideal, IdealSet};
use crate::ring::{Elem, ElementSet, FiniteRing, RingError};
use crate::verdict::{PropertyName, PropertyVerdict, Witness};
use std::cell::OnceCell;

/// Per-ring scan context: the nilpotent set eagerly, the `aRb = 0` and
/// "`aRb` all nilpotent" tables lazily.
pub struct Scanner<'r> {
    ring: &'r FiniteRing,
    nil: ElementSet,
    zp: OnceCell<Vec<ElementSet>>,
    sandwich_nil: OnceCell<Vec<ElementSet>>,
}

impl<'r> Scanner<'r> {
    pub fn new(ring: &'r FiniteRing) -> Scanner<'r> {
        Scanner {
            ring,
            nil: ring.nilpotents(),
            zp: OnceCell::new(),
            sandwich_nil: OnceCell::new(),
        }
    }

    pub fn ring(&self) -> &FiniteRing {
        self.ring
    }

    pub fn nilpotents(&self) -> &ElementSet {
        &self.nil
    }

    /// `zp()[a].contains(b)` iff `aRb = 0`.
    fn zp(&self) -> &Vec<ElementSet> {
        self.zp.get_or_init(|| {
            let r = self.ring;
            let n = r.order();
            let mut rows = Vec::with_capacity(n);
            for a in r.elements() {
                let mut row = ElementSet::empty(n);
                for b in r.elements() {
                    if r.sandwich_zero(a, b) {
                        row.insert(b);
                    }
                }
                rows.push(row);
            }
            rows
        })
    }

    /// `sandwich_nil()[a].contains(b)` iff every `a*r*b` is nilpotent.
    fn sn(&self) -> &Vec<ElementSet> {
        self.sandwich_nil.get_or_init(|| {
            let r = self.ring;
            let n = r.order();
            let mut rows = Vec::with_capacity(n);
            for a in r.elements() {
                let mut row = ElementSet::empty(n);
                for b in r.elements() {
                    if r.elements().all(|m| self.nil.contains(r.mul3(a, m, b))) {
                        row.insert(b);
                    }
                }
                rows.push(row);
            }
            rows
        })
    }

    fn zp_at(&self, a: Elem, b: Elem) -> bool {
        self.zp()[a as usize].contains(b)
    }

    /// Least `r` with `x*r*y != 0`; assumes one exists.
    fn least_nonzero_middle(&self, x: Elem, y: Elem) -> Elem {
        let r = self.ring;
        r.elements()
            .find(|&m| r.mul3(x, m, y) != r.zero())
            .expect("caller checked xRy != 0")
    }

    pub fn decide(&self, p: PropertyName) -> PropertyVerdict {
        match p {
            PropertyName::Reduced => self.is_reduced(),
            PropertyName::Reflexive => self.is_reflexive(),
            PropertyName::LeftNReflexive => self.is_left_n_reflexive(),
            PropertyName::RightNReflexive => self.is_right_n_reflexive(),
            PropertyName::NReflexive => self.is_n_reflexive(),
            PropertyName::WeaklyReflexive => self.is_weakly_reflexive(),
            PropertyName::NilReflexive => self.is_nil_reflexive(),
            PropertyName::Reversible => self.is_reversible(),
            PropertyName::NReversible => self.is_n_reversible(),
            PropertyName::Symmetric => self.is_symmetric(),
            PropertyName::Semicommutative => self.is_semicommutative(),
            PropertyName::NilSemicommutative => self.is_nil_semicommutative(),
            PropertyName::Semiprime => self.is_semiprime(),
            PropertyName::Rip => self.is_rip(),
            PropertyName::LeftIdempotentReflexive => self.is_left_idempotent_reflexive(),
            PropertyName::RightIdempotentReflexive => self.is_right_idempotent_reflexive(),
            PropertyName::LeftNRightIdempotentReflexive => {
                self.is_left_n_right_idempotent_reflexive()
            }
            PropertyName::RightNLeftIdempotentReflexive => {
                self.is_right_n_left_idempotent_reflexive()
            }
            PropertyName::TwoPrimal => self.is_two_primal(),
            PropertyName::LeftPqBaer => self.is_left_pq_baer(),
            PropertyName::RightPqBaer => self.is_right_pq_baer(),
            PropertyName::SlEqualsB => self.is_sl_equals_b(),
            PropertyName::SrEqualsB => self.is_sr_equals_b(),
        }
    }

    pub fn is_reduced(&self) -> PropertyVerdict {
        let r = self.ring;
        for a in self.nil.iter() {
            if a != r.zero() {
                return PropertyVerdict::fail(
                    PropertyName::Reduced.as_str(),
                    r,
                    Witness::new().with("a", r, a),
                );
            }
        }
        PropertyVerdict::pass(PropertyName::Reduced.as_str(), r)
    }

    /// Shared scan for the `xRy = 0 => yRx = 0` family: `a` ranges over
    /// `outer`, `b` over `inner`; premise is `aRb = 0` (or `bRa = 0` when
    /// `swapped`), conclusion the reverse.
    fn reflexive_scan(
        &self,
        name: &str,
        outer: &ElementSet,
        inner: &ElementSet,
        swapped: bool,
        roles: (&str, &str),
    ) -> PropertyVerdict {
        let r = self.ring;
        for a in outer.iter() {
            for b in inner.iter() {
                let (p, q) = if swapped { (b, a) } else { (a, b) };
                if self.zp_at(p, q) && !self.zp_at(q, p) {
                    let m = self.least_nonzero_middle(q, p);
                    let w = Witness::new()
                        .with(roles.0, r, a)
                        .with(roles.1, r, b)
                        .with("r", r, m);
                    return PropertyVerdict::fail(name, r, w);
                }
            }
        }
        PropertyVerdict::pass(name, r)
    }

    pub fn is_reflexive(&self) -> PropertyVerdict {
        let all = ElementSet::full(self.ring.order());
        self.reflexive_scan(
            PropertyName::Reflexive.as_str(),
            &all,
            &all,
            false,
            ("a", "b"),
        )
    }

    pub fn is_left_n_reflexive(&self) -> PropertyVerdict {
        let all = ElementSet::full(self.ring.order());
        self.reflexive_scan(
            PropertyName::LeftNReflexive.as_str(),
            &self.nil,
            &all,
            false,
            ("a", "b"),
        )
    }

    pub fn is_right_n_reflexive(&self) -> PropertyVerdict {
        let all = ElementSet::full(self.ring.order());
        self.reflexive_scan(
            PropertyName::RightNReflexive.as_str(),
            &self.nil,
            &all,
            true,
            ("a", "b"),
        )
    }

    pub fn is_n_reflexive(&self) -> PropertyVerdict {
        let name = PropertyName::NReflexive.as_str();
        let all = ElementSet::full(self.ring.order());
        let left = self.reflexive_scan(name, &self.nil, &all, false, ("a", "b"));
        if !left.holds {
            return left;
        }
        self.reflexive_scan(name, &self.nil, &all, true, ("a", "b"))
    }

    pub fn is_weakly_reflexive(&self) -> PropertyVerdict {
        let r = self.ring;
        let name = PropertyName::WeaklyReflexive.as_str();
        for a in r.elements() {
            for b in r.elements() {
                if !self.zp_at(a, b) || self.sn()[b as usize].contains(a) {
                    continue;
                }
                let m = r
                    .elements()
                    .find(|&m| !self.nil.contains(r.mul3(b, m, a)))
                    .expect("bRa has a non-nilpotent member");
                let w = Witness::new().with("a", r, a).with("b", r, b).with("r", r, m);
                return PropertyVerdict::fail(name, r, w);
            }
        }
        PropertyVerdict::pass(name, r)
    }

    pub fn is_nil_reflexive(&self) -> PropertyVerdict {
        let r = self.ring;
        let name = PropertyName::NilReflexive.as_str();
        for a in r.elements() {
            for b in r.elements() {
                if !self.sn()[a as usize].contains(b) || self.sn()[b as usize].contains(a) {
                    continue;
                }
                let m = r
                    .elements()
                    .find(|&m| !self.nil.contains(r.mul3(b, m, a)))
                    .expect("bRa has a non-nilpotent member");
                let w = Witness::new().with("a", r, a).with("b", r, b).with("r", r, m);
                return PropertyVerdict::fail(name, r, w);
            }
        }
        PropertyVerdict::pass(name, r)
    }

    fn reversible_scan(&self, name: &str, outer: &ElementSet) -> PropertyVerdict {
        let r = self.ring;
        for a in outer.iter() {
            for b in r.elements() {
                if r.mul(a, b) == r.zero() && r.mul(b, a) != r.zero() {
                    let w = Witness::new().with("a", r, a).with("b", r, b);
                    return PropertyVerdict::fail(name, r, w);
                }
            }
        }
        PropertyVerdict::pass(name, r)
    }

    pub fn is_reversible(&self) -> PropertyVerdict {
        let all = ElementSet::full(self.ring.order());
        self.reversible_scan(PropertyName::Reversible.as_str(), &all)
    }

    pub fn is_n_reversible(&self) -> PropertyVerdict {
        self.reversible_scan(PropertyName::NReversible.as_str(), &self.nil)
    }

    pub fn is_symmetric(&self) -> PropertyVerdict {
        let r = self.ring;
        let name = PropertyName::Symmetric.as_str();
        for a in r.elements() {
            for b in r.elements() {
                let ab = r.mul(a, b);
                for c in r.elements() {
                    if r.mul(ab, c) == r.zero() && r.mul3(a, c, b) != r.zero() {
                        let w = Witness::new()
                            .with("a", r, a)
                            .with("b", r, b)
                            .with("c", r, c);
                        return PropertyVerdict::fail(name, r, w);
                    }
                }
            }
        }
        PropertyVerdict::pass(name, r)
    }

    fn semicommutative_scan(&self, name: &str, outer: &ElementSet, inner: &ElementSet) -> PropertyVerdict {
        let r = self.ring;
        for a in outer.iter() {
            for b in inner.iter() {
                if r.mul(a, b) == r.zero() && !self.zp_at(a, b) {
                    let m = self.least_nonzero_middle(a, b);
                    let w = Witness::new().with("a", r, a).with("b", r, b).with("r", r, m);
                    return PropertyVerdict::fail(name, r, w);
                }
            }
        }
        PropertyVerdict::pass(name, r)
    }

    pub fn is_semicommutative(&self) -> PropertyVerdict {
        let all = ElementSet::full(self.ring.order());
        self.semicommutative_scan(PropertyName::Semicommutative.as_str(), &all, &all)
    }

    pub fn is_nil_semicommutative(&self) -> PropertyVerdict {
        self.semicommutative_scan(
            PropertyName::NilSemicommutative.as_str(),
            &self.nil,
            &self.nil,
        )
    }

    pub fn is_semiprime(&self) -> PropertyVerdict {
        let r = self.ring;
        let name = PropertyName::Semiprime.as_str();
        for a in r.elements() {
            if a != r.zero() && self.zp_at(a, a) {
                return PropertyVerdict::fail(name, r, Witness::new().with("a", r, a));
            }
        }
        PropertyVerdict::pass(name, r)
    }

    pub fn is_rip(&self) -> PropertyVerdict {
        let idem = self.ring.idempotents();
        self.reflexive_scan(PropertyName::Rip.as_str(), &idem, &idem, false, ("e", "f"))
    }

    pub fn is_left_idempotent_reflexive(&self) -> PropertyVerdict {
        let idem = self.ring.idempotents();
        let all = ElementSet::full(self.ring.order());
        self.reflexive_scan(
            PropertyName::LeftIdempotentReflexive.as_str(),
            &idem,
            &all,
            false,
            ("e", "a"),
        )
    }

    pub fn is_right_idempotent_reflexive(&self) -> PropertyVerdict {
        let idem = self.ring.idempotents();
        let all = ElementSet::full(self.ring.order());
        self.reflexive_scan(
            PropertyName::RightIdempotentReflexive.as_str(),
            &all,
            &idem,
            false,
            ("a", "e"),
        )
    }

    pub fn is_left_n_right_idempotent_reflexive(&self) -> PropertyVerdict {
        let idem = self.ring.idempotents();
        self.reflexive_scan(
            PropertyName::LeftNRightIdempotentReflexive.as_str(),
            &self.nil,
            &idem,
            false,
            ("a", "e"),
        )
    }

    pub fn is_right_n_left_idempotent_reflexive(&self) -> PropertyVerdict {
        let idem = self.ring.idempotents();
        self.reflexive_scan(
            PropertyName::RightNLeftIdempotentReflexive.as_str(),
            &self.nil,
            &idem,
            true,
            ("a", "e"),
        )
    }

    pub fn is_two_primal(&self) -> PropertyVerdict {
        let r = self.ring;
        let name = PropertyName::TwoPrimal.as_str();
        let rad = jacobson_radical(r);
        // For finite rings the Jacobson radical is nilpotent, hence equal
        // to the prime radical; 2-primality reduces to nil(R) = J(R).
        for a in r.elements() {
            if self.nil.contains(a) != rad.contains(a) {
                return PropertyVerdict::fail(name, r, Witness::new().with("a", r, a));
            }
        }
        PropertyVerdict::pass(name, r)
    }

    fn pq_baer_scan(&self, name: &str, right_side: bool) -> PropertyVerdict {
        let r = self.ring;
        let idem = r.idempotents();
        for a in r.elements() {
            let ann = if right_side {
                r.right_annihilator(&r.right_multiples(a))
            } else {
                r.left_annihilator(&r.left_multiples(a))
            };
            let generated = idem.iter().any(|e| {
                let span = if right_side {
                    r.right_multiples(e)
                } else {
                    r.left_multiples(e)
                };
                span == ann
            });
            if !generated {
                return PropertyVerdict::fail(name, r, Witness::new().with("a", r, a));
            }
        }
        PropertyVerdict::pass(name, r)
    }

    pub fn is_right_pq_baer(&self) -> PropertyVerdict {
        self.pq_baer_scan(PropertyName::RightPqBaer.as_str(), true)
    }

    pub fn is_left_pq_baer(&self) -> PropertyVerdict {
        self.pq_baer_scan(PropertyName::LeftPqBaer.as_str(), false)
    }

    /// Left semicentral, right semicentral, and central idempotents.
    pub fn semicentral_sets(&self) -> (ElementSet, ElementSet, ElementSet) {
        let r = self.ring;
        let idem = r.idempotents();
        let mut sl = ElementSet::empty(r.order());
        let mut sr = ElementSet::empty(r.order());
        let mut b = ElementSet::empty(r.order());
        for e in idem.iter() {
            if r.elements().all(|s| r.mul(s, e) == r.mul3(e, s, e)) {
                sl.insert(e);
            }
            if r.elements().all(|s| r.mul(e, s) == r.mul3(e, s, e)) {
                sr.insert(e);
            }
            if r.is_central(e) {
                b.insert(e);
            }
        }
        (sl, sr, b)
    }

    fn semicentral_equals_central(&self, name: &str, left: bool) -> PropertyVerdict {
        let r = self.ring;
        let (sl, sr, b) = self.semicentral_sets();
        let s = if left { sl } else { sr };
        // Central idempotents are always semicentral, so a disagreement
        // is a semicentral idempotent that fails to commute with someone.
        for e in s.iter() {
            if !b.contains(e) {
                let m = r
                    .elements()
                    .find(|&m| r.mul(e, m) != r.mul(m, e))
                    .expect("non-central element commutes with everything");
                let w = Witness::new().with("e", r, e).with("r", r, m);
                return PropertyVerdict::fail(name, r, w);
            }
        }
        PropertyVerdict::pass(name, r)
    }

    pub fn is_sl_equals_b(&self) -> PropertyVerdict {
        self.semicentral_equals_central(PropertyName::SlEqualsB.as_str(), true)
    }

    pub fn is_sr_equals_b(&self) -> PropertyVerdict {
        self.semicentral_equals_central(PropertyName::SrEqualsB.as_str(), false)
    }

    /// Does `R` being N-reflexive coincide with every nilpotent `a`
    /// satisfying `r(aR) = l(Ra)`? The two sides are computed through
    /// different code paths (sandwich table vs. annihilator sets), so
    /// this doubles as a consistency check. On disagreement the witness
    /// carries the separating nilpotent or the N-reflexivity witness.
    pub fn check_annihilator_characterization(&self) -> PropertyVerdict {
        let r = self.ring;
        let name = "annihilator_characterization";
        let direct = self.is_n_reflexive();
        let mut separating: Option<Elem> = None;
        for a in self.nil.iter() {
            let right = r.right_annihilator(&r.right_multiples(a));
            let left = r.left_annihilator(&r.left_multiples(a));
            if right != left {
                separating = Some(a);
                break;
            }
        }
        match (direct.holds, separating) {
            (true, None) | (false, Some(_)) => PropertyVerdict::pass(name, r),
            (false, None) => PropertyVerdict::fail(
                name,
                r,
                direct.witness.expect("failed verdicts carry witnesses"),
            ),
            (true, Some(a)) => {
                PropertyVerdict::fail(name, r, Witness::new().with("a", r, a))
            }
        }
    }

    /// Cross-check three renderings of left N-reflexivity: the
    /// elementwise definition; `IRJ = 0 => JRI = 0` for `I` the ideal of
    /// a nilpotent element, `J` ranging over principal ideals and
    /// singletons; and `IJ = 0 => JI = 0` with `J` ranging over all
    /// ideals. For an ideal `I` generated by `a` (with identity present)
    /// each of `IRJ = 0`, `IJ = 0` collapses to `aRj = 0` for every
    /// member `j`, and symmetrically, which is what makes the comparison
    /// cheap. Holds iff all three agree.
    pub fn check_ideal_characterization(
        &self,
        ideal_cap: usize,
    ) -> Result<PropertyVerdict, RingError> {
        let r = self.ring;
        let name = "ideal_characterization";

        let direct = {
            let all = ElementSet::full(r.order());
            self.reflexive_scan(name, &self.nil, &all, false, ("a", "b"))
        };

        // aRS = 0 for a member set S, and SRa = 0.
        let forward_zero =
            |a: Elem, s: &[Elem]| s.iter().all(|&j| self.zp_at(a, j));
        let backward_zero =
            |a: Elem, s: &[Elem]| s.iter().all(|&j| self.zp_at(j, a));

        let principals: Vec<Vec<Elem>> = r
            .elements()
            .map(|g| principal_ideal(r, g).to_vec())
            .collect();

        let mut cond2: Option<(Elem, Elem)> = None; // (a, generator-or-singleton)
        'outer2: for a in self.nil.iter() {
            for (g, fam) in principals
                .iter()
                .enumerate()
                .map(|(g, p)| (g as Elem, p.clone()))
                .chain(r.elements().map(|b| (b, vec![b])))
            {
                if forward_zero(a, &fam) && !backward_zero(a, &fam) {
                    cond2 = Some((a, g));
                    break 'outer2;
                }
            }
        }

        let ideals = all_ideals(r, ideal_cap)?;
        let mut cond3: Option<(Elem, usize)> = None;
        'outer3: for a in self.nil.iter() {
            for (k, ideal) in ideals.iter().enumerate() {
                let fam = ideal.to_vec();
                if forward_zero(a, &fam) && !backward_zero(a, &fam) {
                    cond3 = Some((a, k));
                    break 'outer3;
                }
            }
        }

        let c1 = direct.holds;
        let c2 = cond2.is_none();
        let c3 = cond3.is_none();
        if c1 == c2 && c2 == c3 {
            return Ok(PropertyVerdict::pass(name, r));
        }
        // The three forms are equivalent for unital rings, so landing
        // here means the scans disagree; surface whichever violation
        // exists so it can be inspected.
        let witness = if let Some((a, g)) = cond2 {
            Witness::new().with("a", r, a).with("b", r, g)
        } else if let Some((a, k)) = cond3 {
            let least = ideals[k].to_vec()[0];
            Witness::new().with("a", r, a).with("b", r, least)
        } else {
            direct.witness.unwrap_or_default()
        };
        Ok(PropertyVerdict::fail(name, r, witness))
    }
}

/// Decide one property on one ring (builds a fresh scan context).
pub fn decide(ring: &FiniteRing, p: PropertyName) -> PropertyVerdict {
    Scanner::new(ring).decide(p)
}

/// Decide every property on one ring, in `PropertyName::ALL` order.
pub fn decide_all(ring: &FiniteRing) -> Vec<PropertyVerdict> {
    let scan = Scanner::new(ring);
    PropertyName::ALL.iter().map(|&p| scan.decide(p)).collect()
}

/// `uRc ⊆ I` table: rows indexed by `u`, columns by `c`.
fn sandwich_in_ideal(ring: &FiniteRing, ideal: &IdealSet) -> Vec<ElementSet> {
    let n = ring.order();
    let mut rows = Vec::with_capacity(n);
    for u in ring.elements() {
        let mut row = ElementSet::empty(n);
        for c in ring.elements() {
            if ring.elements().all(|m| ideal.contains(ring.mul3(u, m, c))) {
                row.insert(c);
            }
        }
        rows.push(row);
    }
    rows
}

/// Is `I` a left N-reflexive ideal: `aRb ⊆ I` with `a` nilpotent implies
/// `bRa ⊆ I`. Witness roles: `a` (nilpotent), `b`, and the middle `r`
/// with `b*r*a` outside `I`.
pub fn is_left_n_reflexive_ideal(ring: &FiniteRing, ideal: &IdealSet) -> PropertyVerdict {
    let name = "left_n_reflexive_ideal";
    let table = sandwich_in_ideal(ring, ideal);
    for a in ring.nilpotents().iter() {
        for b in ring.elements() {
            if table[a as usize].contains(b) && !table[b as usize].contains(a) {
                let m = ring
                    .elements()
                    .find(|&m| !ideal.contains(ring.mul3(b, m, a)))
                    .expect("bRa leaves the ideal");
                let w = Witness::new()
                    .with("a", ring, a)
                    .with("b", ring, b)
                    .with("r", ring, m);
                return PropertyVerdict::fail(name, ring, w);
            }
        }
    }
    PropertyVerdict::pass(name, ring)
}

/// Re-verify a `left_n_reflexive_ideal` witness from the definition.
pub fn replay_left_n_reflexive_ideal(
    ring: &FiniteRing,
    ideal: &IdealSet,
    w: &Witness,
) -> bool {
    let (a, b, m) = match (w.get(ring, "a"), w.get(ring, "b"), w.get(ring, "r")) {
        (Some(a), Some(b), Some(m)) => (a, b, m),
        _ => return false,
    };
    ring.is_nilpotent(a)
        && ring.elements().all(|s| ideal.contains(ring.mul3(a, s, b)))
        && !ideal.contains(ring.mul3(b, m, a))
}

/// Is `I` ideal-symmetric: `ABC ⊆ I` implies `ACB ⊆ I` for all ideals
/// `A`, `B`, `C`.
///
/// Since every ideal is a sum of principal ideals and the containments
/// are additive in each slot, quantifying over principal `A = RaR`,
/// `B = RbR`, `C = RcR` is equivalent; and with an identity present,
/// `(RaR)(RbR)(RcR) ⊆ I` collapses to `a*r*b*s*c ∈ I` for all middles
/// `r`, `s`. The scan therefore runs over element triples. Witness
/// roles: `a`, `b`, `c` and middles `r`, `s` with `a*r*c*s*b` outside
/// `I`.
pub fn is_ideal_symmetric(ring: &FiniteRing, ideal: &IdealSet) -> PropertyVerdict {
    let name = "ideal_symmetric";
    let n = ring.order();
    let table = sandwich_in_ideal(ring, ideal); // table[u] = { c : uRc ⊆ I }
    for a in ring.elements() {
        // middles[x] = { a*r*x : r }
        let middles: Vec<ElementSet> = (0..n as Elem)
            .map(|x| {
                let mut set = ElementSet::empty(n);
                for m in ring.elements() {
                    set.insert(ring.mul3(a, m, x));
                }
                set
            })
            .collect();
        for b in ring.elements() {
            // Premise set: all c with aRbRc ⊆ I.
            let mut premise = ElementSet::full(n);
            for u in middles[b as usize].iter() {
                premise.intersect_with(&table[u as usize]);
            }
            for c in premise.iter() {
                // Conclusion: aRcRb ⊆ I.
                let ok = middles[c as usize]
                    .iter()
                    .all(|v| table[v as usize].contains(b));
                if !ok {
                    // Locate explicit middles for the witness.
                    let (mut rr, mut ss) = (0, 0);
                    'find: for r in ring.elements() {
                        for s in ring.elements() {
                            if !ideal.contains(ring.mul3(ring.mul3(a, r, c), s, b)) {
                                rr = r;
                                ss = s;
                                break 'find;
                            }
                        }
                    }
                    let w = Witness::new()
                        .with("a", ring, a)
                        .with("b", ring, b)
                        .with("c", ring, c)
                        .with("r", ring, rr)
                        .with("s", ring, ss);
                    return PropertyVerdict::fail(name, ring, w);
                }
            }
        }
    }
    PropertyVerdict::pass(name, ring)
}

/// Re-verify an `ideal_symmetric` witness from the definition.
pub fn replay_ideal_symmetric(ring: &FiniteRing, ideal: &IdealSet, w: &Witness) -> bool {
    let roles = (
        w.get(ring, "a"),
        w.get(ring, "b"),
        w.get(ring, "c"),
        w.get(ring, "r"),
        w.get(ring, "s"),
    );
    let (a, b, c, r, s) = match roles {
        (Some(a), Some(b), Some(c), Some(r), Some(s)) => (a, b, c, r, s),
        _ => return false,
    };
    let premise = ring.elements().all(|m1| {
        ring.elements()
            .all(|m2| ideal.contains(ring.mul3(ring.mul3(a, m1, b), m2, c)))
    });
    premise && !ideal.contains(ring.mul3(ring.mul3(a, r, c), s, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::tests_support::{built, zmod};
    use crate::ideal::{principal_ideal, quotient, DEFAULT_IDEAL_CAP};
    use crate::verdict::replay;

    fn check(ring: &FiniteRing, p: PropertyName, expect: bool) {
        let v = decide(ring, p);
        assert_eq!(v.holds, expect, "{p} on {}: {v}", ring.name());
        if let Some(w) = &v.witness {
            assert!(replay(ring, p, w), "witness fails replay: {v}");
        } else {
            assert!(v.holds, "failed verdict must carry a witness: {v}");
        }
    }

    #[test]
    fn commutative_rings_pass_the_reflexive_family() {
        for n in [2usize, 4, 6, 8, 9] {
            let r = zmod(n);
            for p in [
                PropertyName::Reflexive,
                PropertyName::LeftNReflexive,
                PropertyName::RightNReflexive,
                PropertyName::NReflexive,
                PropertyName::WeaklyReflexive,
                PropertyName::NilReflexive,
                PropertyName::Reversible,
                PropertyName::NReversible,
                PropertyName::Symmetric,
                PropertyName::Semicommutative,
                PropertyName::NilSemicommutative,
                PropertyName::Rip,
                PropertyName::LeftIdempotentReflexive,
                PropertyName::RightIdempotentReflexive,
                PropertyName::TwoPrimal,
                PropertyName::SlEqualsB,
                PropertyName::SrEqualsB,
            ] {
                check(&r, p, true);
            }
        }
    }

    #[test]
    fn z4_is_not_semiprime_and_not_reduced() {
        let z4 = zmod(4);
        let v = decide(&z4, PropertyName::Semiprime);
        assert!(!v.holds);
        assert_eq!(v.witness.as_ref().unwrap().parts[0].index, 2);
        check(&z4, PropertyName::Semiprime, false);
        check(&z4, PropertyName::Reduced, false);
        check(&zmod(6), PropertyName::Reduced, true);
        check(&zmod(6), PropertyName::Semiprime, true);
    }

    #[test]
    fn z4_fails_right_pq_baer_at_two() {
        // r(2*Z_4) = {0, 2} is not eR for e ∈ {0, 1}.
        let z4 = zmod(4);
        let v = decide(&z4, PropertyName::RightPqBaer);
        assert!(!v.holds);
        assert_eq!(v.witness.as_ref().unwrap().parts[0].index, 2);
        check(&z4, PropertyName::RightPqBaer, false);
        check(&z4, PropertyName::LeftPqBaer, false);
        // Fields and products of fields are (p.q.-)Baer.
        check(&zmod(6), PropertyName::RightPqBaer, true);
        check(&zmod(5), PropertyName::LeftPqBaer, true);
    }

    #[test]
    fn matrix_ring_over_field_verdicts() {
        let m = built("M(2, Zmod(2))");
        check(&m, PropertyName::Reduced, false);
        check(&m, PropertyName::Reflexive, true);
        check(&m, PropertyName::LeftNReflexive, true);
        check(&m, PropertyName::RightNReflexive, true);
        check(&m, PropertyName::NReflexive, true);
        check(&m, PropertyName::Semiprime, true);
        check(&m, PropertyName::Reversible, false);
        check(&m, PropertyName::Semicommutative, false);
        check(&m, PropertyName::Symmetric, false);
        // Simple ring: J = 0 but nil is bigger.
        let v = decide(&m, PropertyName::TwoPrimal);
        assert!(!v.holds);
        assert_eq!(v.witness.as_ref().unwrap().parts[0].index, 2);
        check(&m, PropertyName::TwoPrimal, false);
        // Semisimple rings are p.q.-Baer on both sides.
        check(&m, PropertyName::RightPqBaer, true);
        check(&m, PropertyName::LeftPqBaer, true);
        // And all idempotent-variant conditions hold since R is reflexive.
        check(&m, PropertyName::Rip, true);
        check(&m, PropertyName::SlEqualsB, true);
        check(&m, PropertyName::SrEqualsB, true);
    }

    #[test]
    fn upper_triangular_2x2_verdicts() {
        let u = built("U(2, Zmod(2))");
        // Not left N-reflexive: the scan's least witness is
        // a = e12 (#2), b = e11 (#4), r = e11 (#4):
        // e12*R*e11 = 0 but e11*e11*e12 = e12.
        let v = decide(&u, PropertyName::LeftNReflexive);
        assert!(!v.holds);
        let idx: Vec<u64> = v.witness.as_ref().unwrap().parts.iter().map(|p| p.index).collect();
        assert_eq!(idx, vec![2, 4, 4]);
        check(&u, PropertyName::LeftNReflexive, false);
        check(&u, PropertyName::RightNReflexive, false);
        check(&u, PropertyName::NReflexive, false);
        check(&u, PropertyName::Reflexive, false);
        // 2-primal: nil = J = strictly upper entries.
        check(&u, PropertyName::TwoPrimal, true);
        // S_l contains e11, which is not central.
        let v = decide(&u, PropertyName::SlEqualsB);
        assert!(!v.holds);
        let idx: Vec<u64> = v.witness.as_ref().unwrap().parts.iter().map(|p| p.index).collect();
        assert_eq!(idx, vec![4, 2]);
        check(&u, PropertyName::SlEqualsB, false);
        check(&u, PropertyName::SrEqualsB, false);
        // A different pair, (e12, e11 + e12), also replays.
        let w = Witness::new().with("a", &u, 2).with("b", &u, 6).with("r", &u, 4);
        assert!(replay(&u, PropertyName::LeftNReflexive, &w));
        // Not left N-right idempotent reflexive either: a = e12, e = e11.
        check(&u, PropertyName::LeftNRightIdempotentReflexive, false);
    }

    #[test]
    fn constant_diagonal_3x3_fails_both_sides() {
        let d = built("D(3, Zmod(2))");
        check(&d, PropertyName::LeftNReflexive, false);
        check(&d, PropertyName::RightNReflexive, false);
        check(&d, PropertyName::NReflexive, false);
        // Paper witnesses: left side A = e13 + e23 (#3), B = e12 + e13 + e23
        // (#7), C = all-ones unitriangular (#15).
        let left = Witness::new().with("a", &d, 3).with("b", &d, 7).with("r", &d, 15);
        assert!(replay(&d, PropertyName::LeftNReflexive, &left));
        // Right side: A = e12 + e13 (#6).
        let right = Witness::new().with("a", &d, 6).with("b", &d, 7).with("r", &d, 15);
        assert!(replay(&d, PropertyName::RightNReflexive, &right));
        // Its only idempotents are 0 and 1, so the idempotent-relaxed
        // variants hold even though full N-reflexivity fails.
        assert_eq!(d.idempotents().to_vec(), vec![0, 8]);
        check(&d, PropertyName::LeftNRightIdempotentReflexive, true);
        check(&d, PropertyName::RightNLeftIdempotentReflexive, true);
        check(&d, PropertyName::Rip, true);
    }

    #[test]
    fn skew_pair_ring_is_not_right_n_reflexive() {
        let s = built("skew_trivial(truncpoly(Zmod(2), 3), alpha0)");
        check(&s, PropertyName::RightNReflexive, false);
        check(&s, PropertyName::Reflexive, false);
        check(&s, PropertyName::Semiprime, false);
        // The hand-computed witness: a = (0, 1) #1, b = (x, 0) #16,
        // r = (1, 0) #8.
        let w = Witness::new().with("a", &s, 1).with("b", &s, 16).with("r", &s, 8);
        assert!(replay(&s, PropertyName::RightNReflexive, &w));
        // The left-side condition fails too, through nilpotents with a
        // nonzero first component, e.g. a = (x^2, x^2), b = (x, 1).
        check(&s, PropertyName::LeftNReflexive, false);
        let w = Witness::new().with("a", &s, 4 * 8 + 4).with("b", &s, 2 * 8 + 1).with("r", &s, 8);
        assert!(replay(&s, PropertyName::LeftNReflexive, &w));
        // Restricted to nilpotents of the form (0, g) — the second
        // component ideal — the left implication does hold.
        let ring = &s;
        for g in 0..8u16 {
            let a = g; // (0, g) has index 0*8 + g
            assert!(ring.is_nilpotent(a));
            for b in ring.elements() {
                if ring.sandwich_zero(a, b) {
                    assert!(ring.sandwich_zero(b, a), "failed at g={g}, b={b}");
                }
            }
        }
    }

    #[test]
    fn h_rings_over_z2_are_n_reflexive_but_not_reduced() {
        for src in ["H(0, 0, Zmod(2))", "H(1, 0, Zmod(2))", "H(0, 1, Zmod(2))"] {
            let h = built(src);
            check(&h, PropertyName::NReflexive, true);
            check(&h, PropertyName::Reduced, false);
        }
        let h11 = built("H(1, 1, Zmod(2))");
        check(&h11, PropertyName::Reduced, true);
    }

    #[test]
    fn s1_and_s2_over_fields_are_n_reflexive() {
        for src in ["S1(Zmod(2))", "S2(Zmod(2))", "S1(Zmod(3))"] {
            let s = built(src);
            check(&s, PropertyName::NReflexive, true);
            check(&s, PropertyName::Reduced, false);
        }
    }

    #[test]
    fn annihilator_characterization_agrees_everywhere() {
        for src in [
            "Zmod(4)",
            "M(2, Zmod(2))",
            "D(3, Zmod(2))",
            "U(2, Zmod(2))",
            "skew_trivial(truncpoly(Zmod(2), 3), alpha0)",
        ] {
            let r = built(src);
            let v = Scanner::new(&r).check_annihilator_characterization();
            assert!(v.holds, "{src}: {v}");
        }
    }

    #[test]
    fn ideal_characterization_agrees_everywhere() {
        for src in ["Zmod(4)", "U(2, Zmod(2))", "M(2, Zmod(2))", "D(3, Zmod(2))"] {
            let r = built(src);
            let v = Scanner::new(&r)
                .check_ideal_characterization(DEFAULT_IDEAL_CAP)
                .unwrap();
            assert!(v.holds, "{src}: {v}");
        }
    }

    #[test]
    fn whole_ring_is_always_a_symmetric_reflexive_ideal() {
        let d = built("D(3, Zmod(2))");
        let everything = principal_ideal(&d, d.one());
        assert!(is_left_n_reflexive_ideal(&d, &everything).holds);
        assert!(is_ideal_symmetric(&d, &everything).holds);
    }

    #[test]
    fn strictly_upper_ideal_of_d3_separates_ring_from_quotient() {
        let d = built("D(3, Zmod(2))");
        // The strictly upper triangular matrices: everything below
        // index 8 (diagonal digit zero). Generated by e12 (#4) and
        // e23 (#1); a single generator only reaches a 4-element ideal.
        let upper = crate::ideal::ideal_sum(
            &d,
            &principal_ideal(&d, 4),
            &principal_ideal(&d, 1),
        );
        assert_eq!(upper.len(), 8);
        assert_eq!(principal_ideal(&d, 7).len(), 4);
        let sym = is_ideal_symmetric(&d, &upper);
        assert!(sym.holds, "{sym}");
        let q = quotient(&d, &upper).unwrap();
        assert_eq!(q.order(), 2);
        check(&q, PropertyName::NReflexive, true);
        // ... while the ring itself is not N-reflexive, and the zero
        // ideal is not ideal-symmetric.
        check(&d, PropertyName::NReflexive, false);
        let zero_ideal = principal_ideal(&d, d.zero());
        let v = is_ideal_symmetric(&d, &zero_ideal);
        assert!(!v.holds);
        assert!(replay_ideal_symmetric(&d, &zero_ideal, v.witness.as_ref().unwrap()));
        let v = is_left_n_reflexive_ideal(&d, &zero_ideal);
        assert!(!v.holds);
        assert!(replay_left_n_reflexive_ideal(&d, &zero_ideal, v.witness.as_ref().unwrap()));
    }

    #[test]
    fn witnesses_are_deterministic_across_runs() {
        let u = built("U(2, Zmod(2))");
        for p in PropertyName::ALL {
            let a = decide(&u, p);
            let b = decide(&u, p);
            assert_eq!(a.holds, b.holds);
            assert_eq!(a.witness, b.witness, "{p}");
        }
    }

    #[test]
    fn decide_all_covers_every_property_once() {
        let z = zmod(4);
        let all = decide_all(&z);
        assert_eq!(all.len(), PropertyName::ALL.len());
        for (v, p) in all.iter().zip(PropertyName::ALL) {
            assert_eq!(v.property, p.as_str());
        }
    }
}
