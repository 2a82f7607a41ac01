//! Finite rings as explicit operation tables.
//!
//! A ring here is nothing more than two `n x n` tables over the element
//! indices `0..n`, a designated zero and a designated one. Everything the
//! rest of the crate does — property decisions, quotients, constructors —
//! reduces to lookups in these tables, so correctness starts with
//! [`FiniteRing::from_tables`], which refuses any table pair that is not a
//! unital ring and reports the first broken axiom together with the
//! lexicographically least witness tuple.
//!
//! Element identity is the index. Two rings with equal tables are the same
//! ring for every decision procedure in this crate, regardless of how they
//! were built or what their elements are called. Display names for elements
//! (`elem_names`) exist purely so witnesses in reports can be decoded by a
//! human.

use serde::Serialize;
use thiserror::Error;

/// Element index inside a [`FiniteRing`]. Rings are capped well below
/// `u16::MAX`, see [`DEFAULT_ORDER_CAP`].
pub type Elem = u16;

/// Default cap on ring order enforced by the constructors.
pub const DEFAULT_ORDER_CAP: usize = 256;

/// Which axiom family failed during validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxiomKind {
    AbelianGroup,
    Identity,
    Associativity,
    Distributivity,
}

impl std::fmt::Display for AxiomKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            AxiomKind::AbelianGroup => "abelian-group",
            AxiomKind::Identity => "identity",
            AxiomKind::Associativity => "associativity",
            AxiomKind::Distributivity => "distributivity",
        };
        f.write_str(s)
    }
}

/// First violated axiom, with the least witness tuple in scan order.
///
/// `law` names the concrete equation that broke (e.g. `"a+b = b+a"`), and
/// `witness` holds the element indices plugged into it, in the order the
/// equation reads them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub kind: AxiomKind,
    pub law: &'static str,
    pub witness: Vec<Elem>,
}

impl std::fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} violated: {} at {:?}",
            self.kind, self.law, self.witness
        )
    }
}

#[derive(Debug, Error)]
pub enum RingError {
    #[error("bad tables: {0}")]
    InvalidTables(String),
    #[error("{0}")]
    Axiom(AxiomViolation),
    #[error("set is not a two-sided ideal: {0}")]
    NotAnIdeal(String),
    #[error("bound exceeded: {what} is {actual}, cap is {cap}")]
    BoundExceeded {
        what: &'static str,
        actual: usize,
        cap: usize,
    },
}

/// A finite unital ring given by explicit addition and multiplication
/// tables. Construction via [`FiniteRing::from_tables`] guarantees the
/// axioms hold, so operations never re-check them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRing {
    name: String,
    order: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    zero: Elem,
    one: Elem,
    elem_names: Vec<String>,
}

impl FiniteRing {
    /// Validate tables and build the ring. Checks, in this fixed order:
    /// table shape, the additive abelian-group axioms, the multiplicative
    /// identity, multiplicative associativity, and both distributive laws.
    /// The first violation aborts validation and is reported with the least
    /// witness in lexicographic scan order, so the outcome is deterministic
    /// for fixed input.
    pub fn from_tables(
        name: impl Into<String>,
        add: Vec<Elem>,
        mul: Vec<Elem>,
        zero: Elem,
        one: Elem,
        elem_names: Option<Vec<String>>,
    ) -> Result<FiniteRing, RingError> {
        let name = name.into();
        let order = (add.len() as f64).sqrt().round() as usize;
        if order == 0 || order * order != add.len() {
            return Err(RingError::InvalidTables(format!(
                "add table has {} entries, not a positive square",
                add.len()
            )));
        }
        if mul.len() != add.len() {
            return Err(RingError::InvalidTables(format!(
                "mul table has {} entries but add table has {}",
                mul.len(),
                add.len()
            )));
        }
        let n = order as Elem;
        if zero >= n || one >= n {
            return Err(RingError::InvalidTables(format!(
                "zero={zero} / one={one} out of range for order {order}"
            )));
        }
        if let Some(bad) = add.iter().chain(mul.iter()).find(|&&x| x >= n) {
            return Err(RingError::InvalidTables(format!(
                "table entry {bad} out of range for order {order}"
            )));
        }
        let elem_names = match elem_names {
            Some(names) => {
                if names.len() != order {
                    return Err(RingError::InvalidTables(format!(
                        "{} element names for order {order}",
                        names.len()
                    )));
                }
                names
            }
            None => (0..order).map(|i| i.to_string()).collect(),
        };

        let at = |t: &[Elem], a: Elem, b: Elem| t[a as usize * order + b as usize];

        // Abelian group under addition.
        for a in 0..n {
            if at(&add, zero, a) != a {
                return Err(RingError::Axiom(AxiomViolation {
                    kind: AxiomKind::AbelianGroup,
                    law: "0+a = a",
                    witness: vec![a],
                }));
            }
            if at(&add, a, zero) != a {
                return Err(RingError::Axiom(AxiomViolation {
                    kind: AxiomKind::AbelianGroup,
                    law: "a+0 = a",
                    witness: vec![a],
                }));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if at(&add, a, b) != at(&add, b, a) {
                    return Err(RingError::Axiom(AxiomViolation {
                        kind: AxiomKind::AbelianGroup,
                        law: "a+b = b+a",
                        witness: vec![a, b],
                    }));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(&add, at(&add, a, b), c) != at(&add, a, at(&add, b, c)) {
                        return Err(RingError::Axiom(AxiomViolation {
                            kind: AxiomKind::AbelianGroup,
                            law: "(a+b)+c = a+(b+c)",
                            witness: vec![a, b, c],
                        }));
                    }
                }
            }
        }
        let mut neg = vec![Elem::MAX; order];
        for a in 0..n {
            match (0..n).find(|&b| at(&add, a, b) == zero) {
                Some(b) => neg[a as usize] = b,
                None => {
                    return Err(RingError::Axiom(AxiomViolation {
                        kind: AxiomKind::AbelianGroup,
                        law: "every a has b with a+b = 0",
                        witness: vec![a],
                    }));
                }
            }
        }

        // Multiplicative identity.
        for a in 0..n {
            if at(&mul, one, a) != a || at(&mul, a, one) != a {
                return Err(RingError::Axiom(AxiomViolation {
                    kind: AxiomKind::Identity,
                    law: "1*a = a = a*1",
                    witness: vec![a],
                }));
            }
        }

        // Multiplicative associativity.
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(&mul, at(&mul, a, b), c) != at(&mul, a, at(&mul, b, c)) {
                        return Err(RingError::Axiom(AxiomViolation {
                            kind: AxiomKind::Associativity,
                            law: "(a*b)*c = a*(b*c)",
                            witness: vec![a, b, c],
                        }));
                    }
                }
            }
        }

        // Distributivity, left then right per triple.
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(&mul, a, at(&add, b, c)) != at(&add, at(&mul, a, b), at(&mul, a, c)) {
                        return Err(RingError::Axiom(AxiomViolation {
                            kind: AxiomKind::Distributivity,
                            law: "a*(b+c) = a*b + a*c",
                            witness: vec![a, b, c],
                        }));
                    }
                    if at(&mul, at(&add, a, b), c) != at(&add, at(&mul, a, c), at(&mul, b, c)) {
                        return Err(RingError::Axiom(AxiomViolation {
                            kind: AxiomKind::Distributivity,
                            law: "(a+b)*c = a*c + b*c",
                            witness: vec![a, b, c],
                        }));
                    }
                }
            }
        }

        Ok(FiniteRing {
            name,
            order,
            add,
            mul,
            neg,
            zero,
            one,
            elem_names,
        })
    }

    /// Run the axiom validator against raw tables without keeping the ring.
    /// `Ok(())` means the tables are a unital ring.
    pub fn verify_axioms(
        add: &[Elem],
        mul: &[Elem],
        zero: Elem,
        one: Elem,
    ) -> Result<(), RingError> {
        FiniteRing::from_tables("check", add.to_vec(), mul.to_vec(), zero, one, None).map(|_| ())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// `a*b*c` with the fixed left grouping (associativity makes the choice
    /// irrelevant; having one spelling keeps scan loops tidy).
    #[inline]
    pub fn mul3(&self, a: Elem, b: Elem, c: Elem) -> Elem {
        self.mul(self.mul(a, b), c)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        0..self.order as Elem
    }

    pub fn elem_name(&self, a: Elem) -> &str {
        &self.elem_names[a as usize]
    }

    pub fn elem_names(&self) -> &[String] {
        &self.elem_names
    }

    /// `n`-fold sum `a + a + ... + a` (`n = 0` gives zero).
    pub fn scalar_mul(&self, n: usize, a: Elem) -> Elem {
        let mut acc = self.zero;
        for _ in 0..n {
            acc = self.add(acc, a);
        }
        acc
    }

    /// `a^k` for `k >= 1`.
    pub fn pow(&self, a: Elem, k: usize) -> Elem {
        assert!(k >= 1, "pow wants a positive exponent");
        let mut acc = a;
        for _ in 1..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// Additive order of the identity element; equals the characteristic.
    /// Since `m*x = (m*1)*x`, this is also the exponent of `(R, +)`.
    pub fn characteristic(&self) -> usize {
        let mut acc = self.zero;
        for k in 1..=self.order {
            acc = self.add(acc, self.one);
            if acc == self.zero {
                return k;
            }
        }
        // Unreachable for validated tables: ⟨1⟩ is a subgroup of (R, +),
        // so its order divides |R| and zero is hit within `order` steps.
        self.order
    }

    /// True iff `a^k = 0` for some `k >= 1`. The power sequence of `a`
    /// enters a cycle within `order` steps, so we walk at most `order`
    /// powers and report whether zero was hit.
    pub fn is_nilpotent(&self, a: Elem) -> bool {
        let mut x = a;
        for _ in 0..self.order {
            if x == self.zero {
                return true;
            }
            x = self.mul(x, a);
        }
        x == self.zero
    }

    /// All nilpotent elements, ascending.
    pub fn nilpotents(&self) -> ElementSet {
        let mut set = ElementSet::empty(self.order);
        for a in self.elements() {
            if self.is_nilpotent(a) {
                set.insert(a);
            }
        }
        set
    }

    /// All idempotents (`e*e = e`), ascending.
    pub fn idempotents(&self) -> ElementSet {
        let mut set = ElementSet::empty(self.order);
        for e in self.elements() {
            if self.mul(e, e) == e {
                set.insert(e);
            }
        }
        set
    }

    /// All two-sided units, ascending.
    pub fn units(&self) -> ElementSet {
        let mut set = ElementSet::empty(self.order);
        for a in self.elements() {
            if self
                .elements()
                .any(|b| self.mul(a, b) == self.one && self.mul(b, a) == self.one)
            {
                set.insert(a);
            }
        }
        set
    }

    /// The center: all `a` commuting with every element.
    pub fn central_elements(&self) -> ElementSet {
        let mut set = ElementSet::empty(self.order);
        for a in self.elements() {
            if self.elements().all(|r| self.mul(a, r) == self.mul(r, a)) {
                set.insert(a);
            }
        }
        set
    }

    pub fn is_central(&self, a: Elem) -> bool {
        self.elements().all(|r| self.mul(a, r) == self.mul(r, a))
    }

    /// True iff `a*b = b*a` for all pairs.
    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Right annihilator `r(S) = { b : s*b = 0 for all s in S }`.
    pub fn right_annihilator(&self, s: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.order);
        for b in self.elements() {
            if s.iter().all(|x| self.mul(x, b) == self.zero) {
                out.insert(b);
            }
        }
        out
    }

    /// Left annihilator `l(S) = { b : b*s = 0 for all s in S }`.
    pub fn left_annihilator(&self, s: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.order);
        for b in self.elements() {
            if s.iter().all(|x| self.mul(b, x) == self.zero) {
                out.insert(b);
            }
        }
        out
    }

    /// The set `{ a*r : r in R }` (the principal right ideal as a set).
    pub fn right_multiples(&self, a: Elem) -> ElementSet {
        let mut out = ElementSet::empty(self.order);
        for r in self.elements() {
            out.insert(self.mul(a, r));
        }
        out
    }

    /// The set `{ r*a : r in R }`.
    pub fn left_multiples(&self, a: Elem) -> ElementSet {
        let mut out = ElementSet::empty(self.order);
        for r in self.elements() {
            out.insert(self.mul(r, a));
        }
        out
    }

    /// `a*R*b = 0`?
    #[inline]
    pub fn sandwich_zero(&self, a: Elem, b: Elem) -> bool {
        self.elements()
            .all(|r| self.mul(self.mul(a, r), b) == self.zero)
    }
}

/// A subset of a ring's elements, stored as a bitset. Iteration is always
/// ascending by index, which is what makes witness selection and report
/// output deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementSet {
    order: usize,
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(order: usize) -> ElementSet {
        ElementSet {
            order,
            words: vec![0; order.div_ceil(64)],
        }
    }

    pub fn full(order: usize) -> ElementSet {
        let mut s = ElementSet::empty(order);
        for i in 0..order {
            s.insert(i as Elem);
        }
        s
    }

    pub fn from_iter(order: usize, it: impl IntoIterator<Item = Elem>) -> ElementSet {
        let mut s = ElementSet::empty(order);
        for x in it {
            s.insert(x);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn insert(&mut self, x: Elem) {
        debug_assert!((x as usize) < self.order);
        self.words[x as usize / 64] |= 1 << (x as usize % 64);
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        (x as usize) < self.order && self.words[x as usize / 64] >> (x as usize % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order as Elem).filter(move |&x| self.contains(x))
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        assert_eq!(self.order, other.order);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        assert_eq!(self.order, other.order);
        ElementSet {
            order: self.order,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn intersect_with(&mut self, other: &ElementSet) {
        assert_eq!(self.order, other.order);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        assert_eq!(self.order, other.order);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }
}
