//! Bounded-degree polynomial experiments over a table ring.
//!
//! Polynomial rings over a finite ring are infinite, so nothing here
//! "decides" a polynomial-ring property outright. Instead, computations
//! run at an explicit degree cap and every result says whether it stayed
//! exact. Products are computed by full convolution; a truncation flag is
//! raised only when a *nonzero* coefficient falls beyond the cap —
//! dropping a coefficient that is algebraically zero loses nothing.
//!
//! The two bounded predicates, [`is_quasi_armendariz_bounded`] and
//! [`nilpotent_coeffs_condition`], quantify polynomials up to a degree
//! bound. They are necessary conditions for the corresponding unbounded
//! properties, never sufficient ones, and their verdicts carry the bounds
//! in the property label.
//!
//! One structural fact keeps middle quantifiers cheap: `x` is central, so
//! `f·(r x^k)·g = (f·r·g)·x^k`, and by additivity `f·h·g = 0` for every
//! polynomial `h` iff `f·r·g = 0` for every ring element `r`. Both the
//! scalar-middle and the exhaustive-middle checks are implemented and
//! cross-validated in the tests.

use crate::ring::{Elem, FiniteRing};
use crate::verdict::{PropertyVerdict, Witness};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("polynomials live over different rings: `{0}` vs `{1}`")]
    RingMismatch(String, String),
    #[error("coefficient index {index} out of range for `{ring}`")]
    BadCoefficient { index: u64, ring: String },
    #[error("{what} would need {actual} cases, cap is {cap}")]
    BoundExceeded {
        what: &'static str,
        actual: u128,
        cap: u128,
    },
}

/// Did a computation drop a nonzero coefficient past the degree cap?
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TruncationFlag {
    pub occurred: bool,
}

/// A polynomial with coefficients in a table ring, capped at a maximal
/// degree. Trailing zeros are normalized away; the zero polynomial has an
/// empty coefficient vector.
#[derive(Clone, PartialEq, Eq)]
pub struct BoundedPoly<'r> {
    ring: &'r FiniteRing,
    /// `coeffs[i]` is the coefficient of `x^i`.
    coeffs: Vec<Elem>,
    degree_cap: usize,
}

impl<'r> BoundedPoly<'r> {
    pub fn new(
        ring: &'r FiniteRing,
        coeffs: Vec<Elem>,
        degree_cap: usize,
    ) -> Result<BoundedPoly<'r>, PolyError> {
        if coeffs.len() > degree_cap + 1 {
            return Err(PolyError::BoundExceeded {
                what: "polynomial degree",
                actual: coeffs.len() as u128 - 1,
                cap: degree_cap as u128,
            });
        }
        if let Some(&bad) = coeffs.iter().find(|&&c| c as usize >= ring.order()) {
            return Err(PolyError::BadCoefficient {
                index: bad as u64,
                ring: ring.name().to_string(),
            });
        }
        let mut p = BoundedPoly {
            ring,
            coeffs,
            degree_cap,
        };
        p.normalize();
        Ok(p)
    }

    pub fn zero(ring: &'r FiniteRing, degree_cap: usize) -> BoundedPoly<'r> {
        BoundedPoly {
            ring,
            coeffs: Vec::new(),
            degree_cap,
        }
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&self.ring.zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> &'r FiniteRing {
        self.ring
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(self.ring.zero())
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// The same polynomial under a different (not smaller) cap.
    pub fn with_cap(&self, degree_cap: usize) -> Result<BoundedPoly<'r>, PolyError> {
        BoundedPoly::new(self.ring, self.coeffs.clone(), degree_cap)
    }

    fn check_same_ring(&self, other: &BoundedPoly<'r>) -> Result<(), PolyError> {
        if !std::ptr::eq(self.ring, other.ring) && self.ring.name() != other.ring.name() {
            return Err(PolyError::RingMismatch(
                self.ring.name().to_string(),
                other.ring.name().to_string(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for BoundedPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == self.ring.zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let name = self.ring.elem_name(c);
            let wrapped = if name.chars().all(|ch| ch.is_ascii_alphanumeric()) {
                name.to_string()
            } else {
                format!("({name})")
            };
            match (i, c == self.ring.one()) {
                (0, _) => write!(f, "{wrapped}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{wrapped}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{wrapped}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BoundedPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoundedPoly({self})")
    }
}

/// Sum at the common cap; addition never truncates.
pub fn poly_add<'r>(
    f: &BoundedPoly<'r>,
    g: &BoundedPoly<'r>,
) -> Result<BoundedPoly<'r>, PolyError> {
    f.check_same_ring(g)?;
    let r = f.ring;
    let cap = f.degree_cap.max(g.degree_cap);
    let mut coeffs = vec![r.zero(); f.coeffs.len().max(g.coeffs.len())];
    for (i, c) in coeffs.iter_mut().enumerate() {
        *c = r.add(f.coeff(i), g.coeff(i));
    }
    BoundedPoly::new(r, coeffs, cap)
}

/// Convolution product at `f`'s cap. The flag reports whether a nonzero
/// coefficient was dropped; products with `deg f + deg g ≤ cap` are
/// always exact.
pub fn poly_mul<'r>(
    f: &BoundedPoly<'r>,
    g: &BoundedPoly<'r>,
) -> Result<(BoundedPoly<'r>, TruncationFlag), PolyError> {
    f.check_same_ring(g)?;
    let r = f.ring;
    let cap = f.degree_cap.max(g.degree_cap);
    if f.is_zero() || g.is_zero() {
        return Ok((BoundedPoly::zero(r, cap), TruncationFlag::default()));
    }
    let full_len = f.coeffs.len() + g.coeffs.len() - 1;
    let mut full = vec![r.zero(); full_len];
    for (i, &a) in f.coeffs.iter().enumerate() {
        for (j, &b) in g.coeffs.iter().enumerate() {
            full[i + j] = r.add(full[i + j], r.mul(a, b));
        }
    }
    let occurred = full.iter().skip(cap + 1).any(|&c| c != r.zero());
    full.truncate(cap + 1);
    Ok((
        BoundedPoly::new(r, full, cap)?,
        TruncationFlag { occurred },
    ))
}

/// Walk powers `f, f^2, ..., f^power_cap` at `f`'s own cap. Returns
/// whether a zero power was reached and whether any product along the way
/// truncated a nonzero coefficient — a `true` with the flag set is
/// inconclusive evidence, since the zero may be an artifact of the cap.
pub fn is_nilpotent_poly(
    f: &BoundedPoly<'_>,
    power_cap: usize,
) -> Result<(bool, TruncationFlag), PolyError> {
    let mut flag = TruncationFlag::default();
    let mut acc = f.clone();
    let last = power_cap.max(1);
    for step in 1.. {
        if acc.is_zero() {
            return Ok((true, flag));
        }
        if step == last {
            break;
        }
        let (next, t) = poly_mul(&acc, f)?;
        flag.occurred |= t.occurred;
        acc = next;
    }
    Ok((false, flag))
}

/// Exact nilpotency test: powers are computed at a widened cap that no
/// product can overflow, so the answer is truncation-free. Decides
/// "`f^k = 0` for some `k ≤ power_cap`" in the genuine polynomial ring.
pub fn is_nilpotent_poly_exact(
    f: &BoundedPoly<'_>,
    power_cap: usize,
) -> Result<bool, PolyError> {
    let deg = match f.degree() {
        None => return Ok(true),
        Some(d) => d,
    };
    let lifted = f.with_cap(deg * power_cap.max(1))?;
    let (nil, flag) = is_nilpotent_poly(&lifted, power_cap)?;
    debug_assert!(!flag.occurred, "widened cap cannot truncate");
    Ok(nil)
}

/// `f*r*g = 0` for every ring element `r`, computed exactly (internally
/// widened cap). By centrality of `x` and additivity this is equivalent
/// to `f*h*g = 0` for every polynomial `h`.
pub fn annihilates_with_scalar_middles(
    f: &BoundedPoly<'_>,
    g: &BoundedPoly<'_>,
) -> Result<bool, PolyError> {
    f.check_same_ring(g)?;
    let r = f.ring;
    let (df, dg) = match (f.degree(), g.degree()) {
        (Some(df), Some(dg)) => (df, dg),
        _ => return Ok(true),
    };
    let cap = df + dg;
    let lf = f.with_cap(cap)?;
    let lg = g.with_cap(cap)?;
    for m in r.elements() {
        let mid = BoundedPoly::new(r, vec![m], cap)?;
        let (fm, _) = poly_mul(&lf, &mid)?;
        let (fmg, t) = poly_mul(&fm, &lg)?;
        debug_assert!(!t.occurred);
        if !fmg.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `f*h*g = 0` for every `h` of degree at most `middle_degree`, by
/// exhaustive enumeration of `h` — |R|^(middle_degree+1) middles, guarded.
/// Semantically equal to [`annihilates_with_scalar_middles`]; it exists to
/// validate that equivalence computationally.
pub fn annihilates_with_poly_middles(
    f: &BoundedPoly<'_>,
    g: &BoundedPoly<'_>,
    middle_degree: usize,
    enumeration_cap: u128,
) -> Result<bool, PolyError> {
    f.check_same_ring(g)?;
    let r = f.ring;
    let (df, dg) = match (f.degree(), g.degree()) {
        (Some(df), Some(dg)) => (df, dg),
        _ => return Ok(true),
    };
    let count = (r.order() as u128).pow(middle_degree as u32 + 1);
    if count > enumeration_cap {
        return Err(PolyError::BoundExceeded {
            what: "middle polynomial enumeration",
            actual: count,
            cap: enumeration_cap,
        });
    }
    let cap = df + middle_degree + dg;
    let lf = f.with_cap(cap)?;
    let lg = g.with_cap(cap)?;
    for idx in 0..count {
        let mid = BoundedPoly::new(r, decode_coeffs(r, idx, middle_degree), cap)?;
        let (fm, _) = poly_mul(&lf, &mid)?;
        let (fmg, t) = poly_mul(&fm, &lg)?;
        debug_assert!(!t.occurred);
        if !fmg.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coefficients of the `idx`-th polynomial of degree ≤ `d` over `ring`,
/// least-significant digit = constant term.
fn decode_coeffs(ring: &FiniteRing, mut idx: u128, d: usize) -> Vec<Elem> {
    let base = ring.order() as u128;
    let mut coeffs = Vec::with_capacity(d + 1);
    for _ in 0..=d {
        coeffs.push((idx % base) as Elem);
        idx /= base;
    }
    coeffs
}

fn witness_poly_coeffs(w: Witness, prefix: &str, ring: &FiniteRing, p: &BoundedPoly<'_>) -> Witness {
    let mut w = w;
    for (i, &c) in p.coeffs().iter().enumerate() {
        w = w.with(&format!("{prefix}{i}"), ring, c);
    }
    w
}

const ENUMERATION_GUARD: u128 = 1 << 20;

/// Bounded quasi-Armendariz check: for every `f`, `g` of degree at most
/// `degree` with `f·R·g = 0` (equivalently `f·R[x]·g = 0`), all
/// coefficient pairs must satisfy `a_i R b_j = 0`. A pass says nothing
/// about higher degrees; a failure is a genuine counterexample to the
/// unbounded property. The verdict label records the bounds.
pub fn is_quasi_armendariz_bounded(
    ring: &FiniteRing,
    degree: usize,
    middle_degree: usize,
) -> Result<PropertyVerdict, PolyError> {
    let name = format!("quasi_armendariz_bounded(degree={degree}, middle={middle_degree})");
    let n = ring.order() as u128;
    let count = n.pow(degree as u32 + 1);
    if count.saturating_mul(count) > ENUMERATION_GUARD {
        return Err(PolyError::BoundExceeded {
            what: "polynomial pair enumeration",
            actual: count.saturating_mul(count),
            cap: ENUMERATION_GUARD,
        });
    }
    // aRb = 0 table, batched once.
    let zp: Vec<Vec<bool>> = ring
        .elements()
        .map(|a| ring.elements().map(|b| ring.sandwich_zero(a, b)).collect())
        .collect();
    for fi in 0..count {
        let f = BoundedPoly::new(ring, decode_coeffs(ring, fi, degree), degree)?;
        if f.is_zero() {
            continue;
        }
        for gi in 0..count {
            let g = BoundedPoly::new(ring, decode_coeffs(ring, gi, degree), degree)?;
            if g.is_zero() {
                continue;
            }
            if !annihilates_with_scalar_middles(&f, &g)? {
                continue;
            }
            for (i, &a) in f.coeffs().iter().enumerate() {
                for (j, &b) in g.coeffs().iter().enumerate() {
                    if !zp[a as usize][b as usize] {
                        let m = ring
                            .elements()
                            .find(|&m| ring.mul3(a, m, b) != ring.zero())
                            .expect("zp said aRb != 0");
                        let mut w = Witness::new();
                        w = witness_poly_coeffs(w, "a", ring, &f);
                        w = witness_poly_coeffs(w, "b", ring, &g);
                        let w = w
                            .with("ai", ring, a)
                            .with("bj", ring, b)
                            .with("r", ring, m);
                        let _ = (i, j);
                        return Ok(PropertyVerdict::fail(name, ring, w));
                    }
                }
            }
        }
    }
    Ok(PropertyVerdict::pass(name, ring))
}

/// Bounded form of "coefficients of nilpotent polynomials are nilpotent":
/// scans every `f` of degree at most `degree`, tests exact nilpotency up
/// to `power_cap`, and demands all coefficients be nilpotent in `R`.
pub fn nilpotent_coeffs_condition(
    ring: &FiniteRing,
    degree: usize,
    power_cap: usize,
) -> Result<PropertyVerdict, PolyError> {
    let name = format!("nilpotent_coeffs_condition(degree={degree}, power={power_cap})");
    let n = ring.order() as u128;
    let count = n.pow(degree as u32 + 1);
    if count > ENUMERATION_GUARD {
        return Err(PolyError::BoundExceeded {
            what: "polynomial enumeration",
            actual: count,
            cap: ENUMERATION_GUARD,
        });
    }
    let nilset = ring.nilpotents();
    for fi in 0..count {
        let f = BoundedPoly::new(ring, decode_coeffs(ring, fi, degree), degree)?;
        if f.is_zero() || !is_nilpotent_poly_exact(&f, power_cap)? {
            continue;
        }
        if let Some(&bad) = f.coeffs().iter().find(|&&c| !nilset.contains(c)) {
            let w = witness_poly_coeffs(Witness::new(), "a", ring, &f).with("coeff", ring, bad);
            return Ok(PropertyVerdict::fail(name, ring, w));
        }
    }
    Ok(PropertyVerdict::pass(name, ring))
}

/// Bounded left N-reflexivity of the polynomial ring: nilpotent `f` and
/// arbitrary `g` of degree at most `degree` with `f·R[x]·g = 0` must
/// satisfy `g·R[x]·f = 0`. Nilpotency of `f` is decided exactly up to
/// `power_cap`.
pub fn is_left_n_reflexive_poly_bounded(
    ring: &FiniteRing,
    degree: usize,
    power_cap: usize,
) -> Result<PropertyVerdict, PolyError> {
    let name = format!("left_n_reflexive_poly(degree={degree}, power={power_cap})");
    let n = ring.order() as u128;
    let count = n.pow(degree as u32 + 1);
    if count.saturating_mul(count) > ENUMERATION_GUARD {
        return Err(PolyError::BoundExceeded {
            what: "polynomial pair enumeration",
            actual: count.saturating_mul(count),
            cap: ENUMERATION_GUARD,
        });
    }
    let nil_polys: Vec<BoundedPoly<'_>> = (0..count)
        .map(|fi| BoundedPoly::new(ring, decode_coeffs(ring, fi, degree), degree))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .filter(|f| is_nilpotent_poly_exact(f, power_cap).unwrap_or(false))
        .collect();
    for f in &nil_polys {
        for gi in 0..count {
            let g = BoundedPoly::new(ring, decode_coeffs(ring, gi, degree), degree)?;
            if annihilates_with_scalar_middles(f, &g)?
                && !annihilates_with_scalar_middles(&g, f)?
            {
                let mut w = Witness::new();
                w = witness_poly_coeffs(w, "a", ring, f);
                w = witness_poly_coeffs(w, "b", ring, &g);
                return Ok(PropertyVerdict::fail(name, ring, w));
            }
        }
    }
    Ok(PropertyVerdict::pass(name, ring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::tests_support::{built, zmod};
    use proptest::prelude::*;

    fn poly<'r>(ring: &'r FiniteRing, coeffs: &[u16], cap: usize) -> BoundedPoly<'r> {
        BoundedPoly::new(ring, coeffs.to_vec(), cap).unwrap()
    }

    #[test]
    fn one_plus_x_squared_over_z2() {
        let z2 = zmod(2);
        let f = poly(&z2, &[1, 1], 4);
        let (sq, t) = poly_mul(&f, &f).unwrap();
        assert!(!t.occurred);
        assert_eq!(sq.coeffs(), &[1, 0, 1]);
        assert_eq!(sq.to_string(), "1 + x^2");
    }

    #[test]
    fn truncation_flags_only_nonzero_drops() {
        let z4 = zmod(4);
        // x^4 * x at cap 4: the x^5 coefficient 1 is dropped.
        let xd = poly(&z4, &[0, 0, 0, 0, 1], 4);
        let x = poly(&z4, &[0, 1], 4);
        let (p, t) = poly_mul(&xd, &x).unwrap();
        assert!(p.is_zero());
        assert!(t.occurred);
        // 2x * 2x at cap 1: the would-be x^2 coefficient is 4 = 0, so the
        // product is exactly zero and no flag is raised.
        let twox = poly(&z4, &[0, 2], 1);
        let (p, t) = poly_mul(&twox, &twox).unwrap();
        assert!(p.is_zero());
        assert!(!t.occurred);
    }

    #[test]
    fn zero_polynomial_behaves() {
        let z4 = zmod(4);
        let zero = BoundedPoly::zero(&z4, 2);
        assert!(zero.is_zero());
        assert_eq!(zero.degree(), None);
        assert_eq!(zero.to_string(), "0");
        let f = poly(&z4, &[1, 2], 2);
        let (p, t) = poly_mul(&zero, &f).unwrap();
        assert!(p.is_zero() && !t.occurred);
        assert!(annihilates_with_scalar_middles(&zero, &f).unwrap());
        assert!(is_nilpotent_poly(&zero, 1).unwrap().0);
    }

    #[test]
    fn paper_pair_over_constant_diagonal_z4_annihilates() {
        // f = e12 + (2I + e12)x, g = e12 + (2I + 3e12)x in the ring of
        // 2x2 constant-diagonal matrices over Z_4: digits (a, b) encode
        // [[a,b],[0,a]] as a*4 + b.
        let d = built("D(2, Zmod(4))");
        let f = poly(&d, &[1, 2 * 4 + 1], 4);
        let g = poly(&d, &[1, 2 * 4 + 3], 4);
        let (fg, t) = poly_mul(&f, &g).unwrap();
        assert!(!t.occurred);
        assert!(fg.is_zero(), "f*g = {fg}");
        assert!(annihilates_with_scalar_middles(&f, &g).unwrap());
        assert!(annihilates_with_poly_middles(&f, &g, 2, 1 << 20).unwrap());
        // Yet the coefficient pair a_1 = 2I + e12, b_0 = e12 violates
        // a_1 R b_0 = 0: (2I + e12) * I * e12 = 2e12 != 0.
        let a1 = 2 * 4 + 1;
        let b0 = 1;
        assert!(!d.sandwich_zero(a1, b0));
        assert_eq!(d.mul3(a1, d.one(), b0), 2);
    }

    #[test]
    fn quasi_armendariz_bounded_verdicts() {
        let d = built("D(2, Zmod(4))");
        let v = is_quasi_armendariz_bounded(&d, 1, 2).unwrap();
        assert!(!v.holds, "{v}");
        // The witness polynomials really do annihilate with all middles
        // while having a non-annihilating coefficient pair.
        let w = v.witness.as_ref().unwrap();
        let ai = w.parts.iter().find(|p| p.role == "ai").unwrap().index as u16;
        let bj = w.parts.iter().find(|p| p.role == "bj").unwrap().index as u16;
        assert!(!d.sandwich_zero(ai, bj));

        let u = built("U(2, Zmod(2))");
        assert!(is_quasi_armendariz_bounded(&u, 1, 2).unwrap().holds);
        let z2 = zmod(2);
        assert!(is_quasi_armendariz_bounded(&z2, 2, 2).unwrap().holds);
        let z4 = zmod(4);
        assert!(is_quasi_armendariz_bounded(&z4, 1, 2).unwrap().holds);
    }

    #[test]
    fn matrix_nilpotent_poly_with_non_nilpotent_coefficient() {
        // f = e21 + (e11 + e22)x + e12 x^2 over M_2(Z_2) squares to zero,
        // but its middle coefficient is the identity matrix.
        let m = built("M(2, Zmod(2))");
        let f = poly(&m, &[2, 9, 4], 4);
        let (sq, t) = poly_mul(&f, &f).unwrap();
        assert!(!t.occurred);
        assert!(sq.is_zero(), "f^2 = {sq}");
        assert!(is_nilpotent_poly_exact(&f, 2).unwrap());
        assert!(!m.is_nilpotent(9));

        let v = nilpotent_coeffs_condition(&m, 2, 4).unwrap();
        assert!(!v.holds, "{v}");
        let bad = v
            .witness
            .as_ref()
            .unwrap()
            .parts
            .iter()
            .find(|p| p.role == "coeff")
            .unwrap();
        assert!(!m.is_nilpotent(bad.index as u16));
    }

    #[test]
    fn nilpotent_coeffs_condition_holds_for_commutative_and_reduced() {
        let z4 = zmod(4);
        assert!(nilpotent_coeffs_condition(&z4, 2, 4).unwrap().holds);
        let z6 = zmod(6);
        assert!(nilpotent_coeffs_condition(&z6, 2, 4).unwrap().holds);
        let u = built("U(2, Zmod(2))");
        assert!(nilpotent_coeffs_condition(&u, 2, 4).unwrap().holds);
    }

    #[test]
    fn scalar_and_poly_middles_agree_exhaustively_over_z4() {
        let z4 = zmod(4);
        let count = 16u128; // degree ≤ 1
        for fi in 0..count {
            for gi in 0..count {
                let f = BoundedPoly::new(&z4, decode_coeffs(&z4, fi, 1), 1).unwrap();
                let g = BoundedPoly::new(&z4, decode_coeffs(&z4, gi, 1), 1).unwrap();
                let scalar = annihilates_with_scalar_middles(&f, &g).unwrap();
                let full = annihilates_with_poly_middles(&f, &g, 2, 1 << 20).unwrap();
                assert_eq!(scalar, full, "f={f}, g={g}");
            }
        }
    }

    #[test]
    fn bounded_left_n_reflexivity_of_polynomials() {
        // Commutative rings transfer trivially.
        let z4 = zmod(4);
        assert!(is_left_n_reflexive_poly_bounded(&z4, 1, 4).unwrap().holds);
        // U_2(Z_2) is not left N-reflexive, and its polynomial ring
        // already fails at degree 0.
        let u = built("U(2, Zmod(2))");
        let v = is_left_n_reflexive_poly_bounded(&u, 1, 4).unwrap();
        assert!(!v.holds);
    }

    #[test]
    fn enumeration_guards_fire() {
        let m = built("M(2, Zmod(4))"); // order 256
        assert!(matches!(
            is_quasi_armendariz_bounded(&m, 2, 2),
            Err(PolyError::BoundExceeded { .. })
        ));
        let z2 = zmod(2);
        assert!(matches!(
            annihilates_with_poly_middles(
                &poly(&z2, &[1], 1),
                &poly(&z2, &[1], 1),
                30,
                1 << 20
            ),
            Err(PolyError::BoundExceeded { .. })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn mul_is_associative_without_truncation(
            fa in proptest::collection::vec(0u16..6, 0..3),
            fb in proptest::collection::vec(0u16..6, 0..3),
            fc in proptest::collection::vec(0u16..6, 0..3),
        ) {
            let z6 = zmod(6);
            // Cap 8 leaves room for any product of three degree-≤2 polys.
            let a = poly(&z6, &fa, 8);
            let b = poly(&z6, &fb, 8);
            let c = poly(&z6, &fc, 8);
            let (ab, t1) = poly_mul(&a, &b).unwrap();
            let (ab_c, t2) = poly_mul(&ab, &c).unwrap();
            let (bc, t3) = poly_mul(&b, &c).unwrap();
            let (a_bc, t4) = poly_mul(&a, &bc).unwrap();
            prop_assert!(!t1.occurred && !t2.occurred && !t3.occurred && !t4.occurred);
            prop_assert_eq!(ab_c, a_bc);
        }

        #[test]
        fn mul_distributes_over_add(
            fa in proptest::collection::vec(0u16..8, 0..3),
            fb in proptest::collection::vec(0u16..8, 0..3),
            fc in proptest::collection::vec(0u16..8, 0..3),
        ) {
            let u = built("U(2, Zmod(2))");
            let a = poly(&u, &fa, 8);
            let b = poly(&u, &fb, 8);
            let c = poly(&u, &fc, 8);
            let (a_bc, _) = poly_mul(&a, &poly_add(&b, &c).unwrap()).unwrap();
            let (ab, _) = poly_mul(&a, &b).unwrap();
            let (ac, _) = poly_mul(&a, &c).unwrap();
            prop_assert_eq!(a_bc, poly_add(&ab, &ac).unwrap());
        }

        #[test]
        fn scalar_and_poly_middles_agree_on_samples(
            fa in proptest::collection::vec(0u16..8, 1..3),
            fb in proptest::collection::vec(0u16..8, 1..3),
        ) {
            let u = built("U(2, Zmod(2))");
            let f = poly(&u, &fa, 2);
            let g = poly(&u, &fb, 2);
            let scalar = annihilates_with_scalar_middles(&f, &g).unwrap();
            let full = annihilates_with_poly_middles(&f, &g, 1, 1 << 20).unwrap();
            prop_assert_eq!(scalar, full);
        }

        #[test]
        fn exact_nilpotent_polys_over_z4_have_nilpotent_coeffs(
            fa in proptest::collection::vec(0u16..4, 0..4),
        ) {
            let z4 = zmod(4);
            let f = poly(&z4, &fa, 3);
            if is_nilpotent_poly_exact(&f, 4).unwrap() {
                for &c in f.coeffs() {
                    prop_assert!(z4.is_nilpotent(c));
                }
            }
        }
    }
}
