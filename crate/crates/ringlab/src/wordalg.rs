//! Free algebras over a prime field, modulo "pattern ideals".
//!
//! A pattern ideal is spanned by monomials and described by three rule
//! kinds: killed contiguous subwords, killed gaps (a letter `a` occurring
//! anywhere before a letter `b`), and collapse letters `ℓ` with `ℓℓ = ℓ`.
//! That is deliberately far short of general finitely-presented algebras
//! — word problems there are undecidable — but each rule kind is closed
//! under multiplication by arbitrary words, so the quotient keeps an
//! honest monomial basis and multiplication stays exact: concatenate,
//! collapse, test. No truncation is ever involved.
//!
//! Quantified claims ("u·w·v = 0 for every word w") are checked up to an
//! explicit middle-length bound and the bound is part of the answer;
//! nonzero witnesses, by contrast, are exact disproofs.
//!
//! When the quotient algebra is finite-dimensional,
//! [`PatternIdeal::quotient_ring`] materializes it as an operation-table
//! ring, which puts the whole property-scanner toolbox at its disposal.

use crate::ring::{Elem, FiniteRing, RingError};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WordAlgError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("letter `{letter}` is not in the alphabet")]
    UnknownLetter { letter: char },
    #[error("{0} is not a prime scalar field size")]
    NotPrime(u16),
    #[error("kill pattern `{pattern}` contains a doubled collapse letter; it would never match a collapsed word")]
    UnreachableKill { pattern: String },
    #[error("no finite monomial basis found up to word length {len_cap}")]
    NoFiniteBasis { len_cap: usize },
    #[error("quotient would have {order} elements, cap is {cap}")]
    QuotientTooLarge { order: u128, cap: usize },
    #[error("mixing elements of different pattern algebras")]
    IdealMismatch,
    #[error(transparent)]
    Ring(#[from] RingError),
}

fn is_prime(n: u16) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// A monomial-spanned ideal of the free algebra, given by its forbidden
/// patterns, plus the idempotent-letter relations `ℓℓ = ℓ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternIdeal {
    alphabet: Vec<char>,
    kill_subwords: Vec<String>,
    kill_gaps: Vec<(char, char)>,
    collapse_letters: BTreeSet<char>,
    scalar_prime: u16,
}

impl PatternIdeal {
    pub fn new(
        alphabet: &[char],
        kill_subwords: &[&str],
        kill_gaps: &[(char, char)],
        collapse_letters: &[char],
        scalar_prime: u16,
    ) -> Result<PatternIdeal, WordAlgError> {
        let p = PatternIdeal {
            alphabet: alphabet.to_vec(),
            kill_subwords: kill_subwords.iter().map(|s| s.to_string()).collect(),
            kill_gaps: kill_gaps.to_vec(),
            collapse_letters: collapse_letters.iter().copied().collect(),
            scalar_prime,
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), WordAlgError> {
        if self.alphabet.is_empty() {
            return Err(WordAlgError::Syntax {
                line: 0,
                message: "empty alphabet".to_string(),
            });
        }
        if !is_prime(self.scalar_prime) {
            return Err(WordAlgError::NotPrime(self.scalar_prime));
        }
        if let Some(&bad) = self
            .alphabet
            .iter()
            .find(|c| !c.is_ascii_alphanumeric())
        {
            return Err(WordAlgError::Syntax {
                line: 0,
                message: format!("`{bad}` is not a usable letter"),
            });
        }
        let known = |c: char| self.alphabet.contains(&c);
        for w in &self.kill_subwords {
            if let Some(bad) = w.chars().find(|&c| !known(c)) {
                return Err(WordAlgError::UnknownLetter { letter: bad });
            }
            // A pattern with ℓℓ inside can never match a collapsed word,
            // which would silently change the ideal's meaning.
            let chars: Vec<char> = w.chars().collect();
            if chars
                .windows(2)
                .any(|p| p[0] == p[1] && self.collapse_letters.contains(&p[0]))
            {
                return Err(WordAlgError::UnreachableKill {
                    pattern: w.clone(),
                });
            }
        }
        for &(a, b) in &self.kill_gaps {
            for c in [a, b] {
                if !known(c) {
                    return Err(WordAlgError::UnknownLetter { letter: c });
                }
            }
        }
        if let Some(&bad) = self.collapse_letters.iter().find(|&&c| !known(c)) {
            return Err(WordAlgError::UnknownLetter { letter: bad });
        }
        Ok(())
    }

    /// Parse the textual form: statements separated by `;` or newlines,
    /// `#` starts a comment. Directives: `letters x y`, `kill xy yyx`,
    /// `gap x y`, `collapse x`, `prime 3`. Multiple statements of the
    /// same directive accumulate.
    pub fn parse(src: &str) -> Result<PatternIdeal, WordAlgError> {
        let mut alphabet = Vec::new();
        let mut kill_subwords = Vec::new();
        let mut kill_gaps = Vec::new();
        let mut collapse_letters = BTreeSet::new();
        let mut scalar_prime = 2u16;
        for (lineno, text) in src.lines().enumerate() {
            let line = lineno + 1;
            let text = text.split('#').next().unwrap_or("");
            for stmt in text.split(';') {
                let toks: Vec<&str> = stmt.split_whitespace().collect();
                if toks.is_empty() {
                    continue;
                }
                let args = &toks[1..];
                let syntax = |message: String| WordAlgError::Syntax { line, message };
                let one_char = |t: &str| -> Result<char, WordAlgError> {
                    let mut it = t.chars();
                    match (it.next(), it.next()) {
                        (Some(c), None) if c.is_ascii_alphanumeric() => Ok(c),
                        _ => Err(syntax(format!("`{t}` is not a single letter"))),
                    }
                };
                match toks[0] {
                    "letters" => {
                        if args.is_empty() {
                            return Err(syntax("`letters` needs at least one letter".into()));
                        }
                        for t in args {
                            let c = one_char(t)?;
                            if !alphabet.contains(&c) {
                                alphabet.push(c);
                            }
                        }
                    }
                    "kill" => {
                        if args.is_empty() {
                            return Err(syntax("`kill` needs at least one word".into()));
                        }
                        kill_subwords.extend(args.iter().map(|t| t.to_string()));
                    }
                    "gap" => {
                        let [a, b] = args else {
                            return Err(syntax("`gap` takes exactly two letters".into()));
                        };
                        kill_gaps.push((one_char(a)?, one_char(b)?));
                    }
                    "collapse" => {
                        if args.is_empty() {
                            return Err(syntax("`collapse` needs at least one letter".into()));
                        }
                        for t in args {
                            collapse_letters.insert(one_char(t)?);
                        }
                    }
                    "prime" => {
                        let [t] = args else {
                            return Err(syntax("`prime` takes exactly one number".into()));
                        };
                        scalar_prime = t
                            .parse()
                            .map_err(|_| syntax(format!("`{t}` is not a number")))?;
                    }
                    other => {
                        return Err(syntax(format!(
                            "unknown directive `{other}` (expected letters/kill/gap/collapse/prime)"
                        )));
                    }
                }
            }
        }
        let p = PatternIdeal {
            alphabet,
            kill_subwords,
            kill_gaps,
            collapse_letters,
            scalar_prime,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn scalar_prime(&self) -> u16 {
        self.scalar_prime
    }

    /// Collapse runs of collapse letters, then decide ideal membership:
    /// `None` means the word lies in the ideal (is zero in the quotient).
    pub fn normal_form(&self, word: &str) -> Option<String> {
        let mut collapsed = String::with_capacity(word.len());
        for c in word.chars() {
            if collapsed.ends_with(c) && self.collapse_letters.contains(&c) {
                continue;
            }
            collapsed.push(c);
        }
        if self.kill_subwords.iter().any(|k| collapsed.contains(&**k)) {
            return None;
        }
        for &(a, b) in &self.kill_gaps {
            let first_a = collapsed.find(a);
            let last_b = collapsed.rfind(b);
            if let (Some(i), Some(j)) = (first_a, last_b) {
                if i < j {
                    return None;
                }
            }
        }
        Some(collapsed)
    }

    /// The single-word element `w`, validated against the alphabet.
    pub fn word(&self, w: &str) -> Result<AlgebraElement<'_>, WordAlgError> {
        if let Some(bad) = w.chars().find(|c| !self.alphabet.contains(c)) {
            return Err(WordAlgError::UnknownLetter { letter: bad });
        }
        let mut terms = BTreeMap::new();
        if let Some(nf) = self.normal_form(w) {
            terms.insert(nf, 1);
        }
        Ok(AlgebraElement { ideal: self, terms })
    }

    pub fn zero(&self) -> AlgebraElement<'_> {
        AlgebraElement {
            ideal: self,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> AlgebraElement<'_> {
        self.word("").expect("empty word is always valid")
    }

    /// All ideal-free words of length exactly `len`, in lexicographic
    /// order of alphabet positions.
    fn normal_words_of_len(&self, len: usize) -> Vec<String> {
        // Depth-first in alphabet order yields lexicographic output.
        fn grow(p: &PatternIdeal, w: &str, len: usize, out: &mut Vec<String>) {
            if w.chars().count() == len {
                out.push(w.to_string());
                return;
            }
            for &c in &p.alphabet {
                let mut next = w.to_string();
                next.push(c);
                // Prune: a word with a non-normal prefix is non-normal.
                if p.normal_form(&next).as_deref() == Some(next.as_str()) {
                    grow(p, &next, len, out);
                }
            }
        }
        let mut out = Vec::new();
        grow(self, "", len, &mut out);
        out
    }

    /// Normal words by length then lexicographic order, up to `max_len`.
    pub fn normal_words_up_to(&self, max_len: usize) -> Vec<String> {
        (0..=max_len)
            .flat_map(|l| self.normal_words_of_len(l))
            .collect()
    }

    /// The full monomial basis of the quotient, if one exists within
    /// `len_cap`. Sound stopping rule: every factor of a normal word is
    /// normal, so an empty length level means all longer levels are
    /// empty too.
    pub fn finite_basis(&self, len_cap: usize) -> Option<Vec<String>> {
        let mut basis = Vec::new();
        for len in 0..=len_cap {
            let level = self.normal_words_of_len(len);
            if level.is_empty() {
                return Some(basis);
            }
            basis.extend(level);
        }
        None
    }

    /// Materialize a finite-dimensional quotient as a table ring. The
    /// element with coefficient vector `(c_0, ..., c_{k-1})` over the
    /// basis (length-then-lex order, so `c_0` is the constant term) gets
    /// index `Σ c_i · p^i`.
    pub fn quotient_ring(&self, len_cap: usize, order_cap: usize) -> Result<FiniteRing, WordAlgError> {
        let basis = self
            .finite_basis(len_cap)
            .ok_or(WordAlgError::NoFiniteBasis { len_cap })?;
        let p = self.scalar_prime as u128;
        let order = p.checked_pow(basis.len() as u32).unwrap_or(u128::MAX);
        if order > order_cap as u128 {
            return Err(WordAlgError::QuotientTooLarge {
                order,
                cap: order_cap,
            });
        }
        let order = order as usize;
        let decode = |mut idx: usize| -> AlgebraElement<'_> {
            let mut e = self.zero();
            for w in &basis {
                let c = (idx % p as usize) as u16;
                idx /= p as usize;
                if c != 0 {
                    e.terms.insert(w.clone(), c);
                }
            }
            e
        };
        let encode = |e: &AlgebraElement<'_>| -> Elem {
            let mut idx = 0usize;
            for (w, &c) in &e.terms {
                let pos = basis
                    .iter()
                    .position(|b| b == w)
                    .expect("product of basis words is a basis word");
                idx += c as usize * (p as usize).pow(pos as u32);
            }
            idx as Elem
        };
        let elems: Vec<AlgebraElement<'_>> = (0..order).map(decode).collect();
        let mut add = Vec::with_capacity(order * order);
        let mut mul = Vec::with_capacity(order * order);
        for a in &elems {
            for b in &elems {
                add.push(encode(&a.add(b)));
                mul.push(encode(&a.mul(b)));
            }
        }
        let names = elems.iter().map(|e| e.to_string()).collect();
        let rules: Vec<String> = self
            .kill_subwords
            .iter()
            .cloned()
            .chain(self.kill_gaps.iter().map(|(a, b)| format!("{a}..{b}")))
            .chain(self.collapse_letters.iter().map(|c| format!("{c}{c}={c}")))
            .collect();
        let name = format!(
            "F{}<{}>/({})",
            self.scalar_prime,
            self.alphabet.iter().collect::<String>(),
            rules.join(", ")
        );
        Ok(FiniteRing::from_tables(
            name,
            add,
            mul,
            0,
            1,
            Some(names),
        )?)
    }

    /// Does `w^k` fall into the ideal for some `k ≤ power_cap`? Exact:
    /// powers are concatenations reduced to normal form. Detects cycles
    /// (an idempotent letter never reaches zero) and exits early.
    pub fn nilpotency_of_word(&self, w: &str, power_cap: usize) -> bool {
        let mut seen = BTreeSet::new();
        let mut acc = match self.normal_form(w) {
            None => return true,
            Some(nf) => nf,
        };
        for _ in 1..power_cap {
            if !seen.insert(acc.clone()) {
                return false;
            }
            acc = match self.normal_form(&format!("{acc}{w}")) {
                None => return true,
                Some(nf) => nf,
            };
        }
        false
    }

    fn words_up_to(&self, max_len: usize) -> Vec<String> {
        let mut out = vec![String::new()];
        let mut level = vec![String::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &level {
                for &c in &self.alphabet {
                    let mut n = w.clone();
                    n.push(c);
                    next.push(n);
                }
            }
            out.extend(next.iter().cloned());
            level = next;
        }
        out
    }
}

/// Outcome of a bounded orthogonality scan `u·w·v` over all words `w` of
/// length at most `middle_bound`. `witness` is an exact disproof; its
/// absence is only a claim up to the bound.
#[derive(Debug, Clone)]
pub struct OrthogonalityReport {
    pub middle_bound: usize,
    pub witness: Option<OrthogonalityWitness>,
}

#[derive(Debug, Clone)]
pub struct OrthogonalityWitness {
    pub middle: String,
    pub product: String,
}

impl OrthogonalityReport {
    pub fn all_zero(&self) -> bool {
        self.witness.is_none()
    }
}

/// Scan `u·w·v` over every word `w` with `|w| ≤ middle_bound` (scalar
/// multiples add nothing by bilinearity). Middles are tried shortest
/// first, lexicographically within a length, so a reported witness is
/// the least one.
pub fn check_orthogonality(
    u: &AlgebraElement<'_>,
    v: &AlgebraElement<'_>,
    middle_bound: usize,
) -> Result<OrthogonalityReport, WordAlgError> {
    u.check_same_ideal(v)?;
    let ideal = u.ideal;
    for w in ideal.words_up_to(middle_bound) {
        let mid = ideal.word(&w)?;
        let prod = u.mul(&mid).mul(v);
        if !prod.is_zero() {
            return Ok(OrthogonalityReport {
                middle_bound,
                witness: Some(OrthogonalityWitness {
                    middle: if w.is_empty() { "1".to_string() } else { w },
                    product: prod.to_string(),
                }),
            });
        }
    }
    Ok(OrthogonalityReport {
        middle_bound,
        witness: None,
    })
}

/// An element of the quotient algebra: a finite sum of normal words with
/// coefficients in Z_p.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement<'p> {
    ideal: &'p PatternIdeal,
    /// Normal-form word → nonzero coefficient in Z_p.
    terms: BTreeMap<String, u16>,
}

impl<'p> AlgebraElement<'p> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn ideal(&self) -> &'p PatternIdeal {
        self.ideal
    }

    pub fn terms(&self) -> impl Iterator<Item = (&str, u16)> {
        self.terms.iter().map(|(w, &c)| (w.as_str(), c))
    }

    fn check_same_ideal(&self, other: &AlgebraElement<'p>) -> Result<(), WordAlgError> {
        if !std::ptr::eq(self.ideal, other.ideal) && self.ideal != other.ideal {
            return Err(WordAlgError::IdealMismatch);
        }
        Ok(())
    }

    fn add_term(&mut self, w: &str, c: u16) {
        if c == 0 {
            return;
        }
        let p = self.ideal.scalar_prime;
        let entry = self.terms.entry(w.to_string()).or_insert(0);
        *entry = (*entry + c) % p;
        if *entry == 0 {
            self.terms.remove(w);
        }
    }

    pub fn add(&self, other: &AlgebraElement<'p>) -> AlgebraElement<'p> {
        let mut out = self.clone();
        for (w, &c) in &other.terms {
            out.add_term(w, c);
        }
        out
    }

    pub fn neg(&self) -> AlgebraElement<'p> {
        let p = self.ideal.scalar_prime;
        let mut out = self.ideal.zero();
        for (w, &c) in &self.terms {
            out.add_term(w, (p - c) % p);
        }
        out
    }

    pub fn scale(&self, k: u16) -> AlgebraElement<'p> {
        let mut out = self.ideal.zero();
        for (w, &c) in &self.terms {
            out.add_term(w, (c * (k % self.ideal.scalar_prime)) % self.ideal.scalar_prime);
        }
        out
    }

    /// Bilinear extension of concatenate-then-reduce. Exact: the rules
    /// only erase or shorten words.
    pub fn mul(&self, other: &AlgebraElement<'p>) -> AlgebraElement<'p> {
        let p = self.ideal.scalar_prime;
        let mut out = self.ideal.zero();
        for (w1, &c1) in &self.terms {
            for (w2, &c2) in &other.terms {
                if let Some(nf) = self.ideal.normal_form(&format!("{w1}{w2}")) {
                    out.add_term(&nf, (c1 * c2) % p);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> AlgebraElement<'p> {
        let mut out = self.ideal.one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }
}

impl fmt::Display for AlgebraElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (w, &c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (w.is_empty(), c) {
                (true, c) => write!(f, "{c}")?,
                (false, 1) => write!(f, "{w}")?,
                (false, c) => write!(f, "{c}*{w}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement({self})")
    }
}

/// A 3×3 matrix `[[x, y, z], [0, x, 0], [0, 0, x]]` with symbolic
/// entries — the constant-diagonal two-corner shape, taken over a
/// pattern-quotient algebra instead of a table ring.
#[derive(Clone, PartialEq, Eq)]
pub struct S1Matrix<'p> {
    pub x: AlgebraElement<'p>,
    pub y: AlgebraElement<'p>,
    pub z: AlgebraElement<'p>,
}

impl<'p> S1Matrix<'p> {
    pub fn new(
        x: AlgebraElement<'p>,
        y: AlgebraElement<'p>,
        z: AlgebraElement<'p>,
    ) -> S1Matrix<'p> {
        S1Matrix { x, y, z }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    /// Matrix product specialized to the shape: the (1,2) and (1,3)
    /// entries transform like `x1*y2 + y1*x2`.
    pub fn mul(&self, other: &S1Matrix<'p>) -> S1Matrix<'p> {
        S1Matrix {
            x: self.x.mul(&other.x),
            y: self.x.mul(&other.y).add(&self.y.mul(&other.x)),
            z: self.x.mul(&other.z).add(&self.z.mul(&other.x)),
        }
    }

    /// Least `k ≤ power_cap` with `self^k = 0`, if any.
    pub fn nilpotency_index(&self, power_cap: usize) -> Option<usize> {
        let mut acc = self.clone();
        for k in 1..=power_cap {
            if acc.is_zero() {
                return Some(k);
            }
            if k < power_cap {
                acc = acc.mul(self);
            }
        }
        None
    }
}

impl fmt::Display for S1Matrix<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Result of the symbolic two-sided annihilation scan for a pair of
/// shaped matrices: is `A·M·B = 0` for every matrix `M` whose entries
/// are words of length at most `middle_bound`, and is `B·A` zero?
#[derive(Debug, Clone)]
pub struct S1Report {
    pub middle_bound: usize,
    pub a_nilpotency_index: Option<usize>,
    pub asb_witness: Option<String>,
    pub ba: String,
    pub ba_is_zero: bool,
}

/// Exhaustively multiply `A·M·B` over matrices `M` with monomial entries
/// up to `middle_bound` (multilinearity makes monomial triples enough),
/// and compute `B·A` exactly.
pub fn s1_annihilation_scan<'p>(
    a: &S1Matrix<'p>,
    b: &S1Matrix<'p>,
    middle_bound: usize,
    power_cap: usize,
) -> Result<S1Report, WordAlgError> {
    a.x.check_same_ideal(&b.x)?;
    let ideal = a.x.ideal;
    let words = ideal.words_up_to(middle_bound);
    let mut asb_witness = None;
    'scan: for wx in &words {
        for wy in &words {
            for wz in &words {
                let m = S1Matrix::new(ideal.word(wx)?, ideal.word(wy)?, ideal.word(wz)?);
                let prod = a.mul(&m).mul(b);
                if !prod.is_zero() {
                    asb_witness = Some(format!("M = ({wx}, {wy}, {wz}), A*M*B = {prod}"));
                    break 'scan;
                }
            }
        }
    }
    let ba = b.mul(a);
    Ok(S1Report {
        middle_bound,
        a_nilpotency_index: a.nilpotency_index(power_cap),
        asb_witness,
        ba: ba.to_string(),
        ba_is_zero: ba.is_zero(),
    })
}
