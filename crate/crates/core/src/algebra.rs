//! Sparse exact arithmetic in the rational group algebra of a free group.
//!
//! An element is a finite formal sum of reduced words with nonzero rational
//! coefficients. Multiplication is convolution: every pair of terms is
//! combined through word concatenation, and coefficients of colliding words
//! add. All arithmetic is exact, so results are independent of term order
//! and of how the convolution loop is partitioned across threads.
//!
//! The module also provides the two families of elements the rest of the
//! crate is built from: the spheres X_n (sum of all words of length n) and
//! the radial element G = X_1, the sum of the generators and their
//! inverses.

use std::collections::HashMap;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::word::{count_words_of_length, GroupSpec, Letter, ReducedWord};

/// Cap on the projected number of terms an operation may materialize.
///
/// Sphere enumeration and repeated convolution grow exponentially; any
/// operation whose projected support exceeds the cap refuses up front,
/// before allocating, and reports the projection.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TermLimit(u64);

impl TermLimit {
    pub const DEFAULT: u64 = 20_000_000;

    pub fn new(limit: u64) -> Self {
        Self(limit)
    }

    pub fn get(&self) -> u64 {
        self.0
    }

    fn check(&self, projected: BigUint) -> Result<()> {
        if projected > BigUint::from(self.0) {
            Err(Error::TermLimitExceeded {
                projected,
                limit: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for TermLimit {
    fn default() -> Self {
        Self(Self::DEFAULT)
    }
}

/// Below this many term pairs a convolution stays on one thread; the
/// threshold only affects scheduling, never the result.
const PARALLEL_PAIR_THRESHOLD: usize = 1 << 16;

/// An element of the rational group algebra over a free group.
///
/// Zero coefficients are never stored, so term count equals support size
/// and equality is plain map equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement {
    spec: GroupSpec,
    terms: HashMap<ReducedWord, BigRational>,
}

impl AlgebraElement {
    pub fn zero(spec: GroupSpec) -> Self {
        Self {
            spec,
            terms: HashMap::new(),
        }
    }

    /// The multiplicative identity: the empty word with coefficient 1.
    pub fn identity(spec: GroupSpec) -> Self {
        Self::from_word(ReducedWord::identity(spec))
    }

    /// A single word with coefficient 1.
    pub fn from_word(word: ReducedWord) -> Self {
        let spec = word.spec();
        let mut terms = HashMap::with_capacity(1);
        terms.insert(word, BigRational::one());
        Self { spec, terms }
    }

    /// Builds an element from (word, coefficient) pairs, merging duplicate
    /// words and dropping zero coefficients.
    pub fn from_terms<I>(spec: GroupSpec, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ReducedWord, BigRational)>,
    {
        let mut terms = HashMap::new();
        for (word, coefficient) in pairs {
            if word.spec() != spec {
                return Err(spec.mismatch(&word.spec()));
            }
            if coefficient.is_zero() {
                continue;
            }
            *terms.entry(word).or_insert_with(BigRational::zero) += coefficient;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Self { spec, terms })
    }

    pub(crate) fn from_map(spec: GroupSpec, mut terms: HashMap<ReducedWord, BigRational>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        Self { spec, terms }
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    /// Support size.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the given word, zero when absent.
    pub fn coefficient(&self, word: &ReducedWord) -> BigRational {
        self.terms
            .get(word)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&ReducedWord, &BigRational)> {
        self.terms.iter()
    }

    /// Terms in the deterministic word order (length, then letters).
    pub fn sorted_terms(&self) -> Vec<(&ReducedWord, &BigRational)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| a.cmp(b));
        terms
    }

    /// Termwise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.spec != other.spec {
            return Err(self.spec.mismatch(&other.spec));
        }
        let (mut terms, smaller) = if self.terms.len() >= other.terms.len() {
            (self.terms.clone(), &other.terms)
        } else {
            (other.terms.clone(), &self.terms)
        };
        for (word, coefficient) in smaller {
            *terms.entry(word.clone()).or_insert_with(BigRational::zero) += coefficient;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Self {
            spec: self.spec,
            terms,
        })
    }

    /// Scalar multiple.
    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return Self::zero(self.spec);
        }
        let terms = self
            .terms
            .iter()
            .map(|(word, coefficient)| (word.clone(), coefficient * factor))
            .collect();
        Self {
            spec: self.spec,
            terms,
        }
    }

    /// Convolution product.
    ///
    /// Large products are partitioned across threads; exact coefficient
    /// arithmetic makes the merged result identical for every partitioning.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.spec != other.spec {
            return Err(self.spec.mismatch(&other.spec));
        }
        Ok(self.multiply_same_spec(other))
    }

    fn multiply_same_spec(&self, other: &Self) -> Self {
        let pairs = self.terms.len().saturating_mul(other.terms.len());
        let mut terms = if pairs >= PARALLEL_PAIR_THRESHOLD && rayon::current_num_threads() > 1 {
            self.multiply_parallel(other)
        } else {
            let left: Vec<_> = self.terms.iter().collect();
            let right: Vec<_> = other.terms.iter().collect();
            convolve_block(&left, &right)
        };
        terms.retain(|_, c| !c.is_zero());
        Self {
            spec: self.spec,
            terms,
        }
    }

    fn multiply_parallel(&self, other: &Self) -> HashMap<ReducedWord, BigRational> {
        // Partition whichever side has more terms so every thread gets work
        // even when one factor is tiny (the usual case for powers of G).
        let left: Vec<_> = self.terms.iter().collect();
        let right: Vec<_> = other.terms.iter().collect();
        let (chunked, fixed, chunked_is_left) = if left.len() >= right.len() {
            (&left, &right, true)
        } else {
            (&right, &left, false)
        };
        let chunk_size = (chunked.len() / (rayon::current_num_threads() * 4)).max(1);
        chunked
            .par_chunks(chunk_size)
            .map(|chunk| {
                if chunked_is_left {
                    convolve_block(chunk, fixed)
                } else {
                    convolve_block(fixed, chunk)
                }
            })
            .reduce(HashMap::new, merge_term_maps)
    }

    /// Convolution product with the term-limit guard applied first: the
    /// support of the result is projected from the operands (see
    /// [`projected_product_terms`]) and the product is refused, before any
    /// large allocation, when the projection exceeds `limit`.
    pub fn multiply_within(&self, other: &Self, limit: TermLimit) -> Result<Self> {
        if self.spec != other.spec {
            return Err(self.spec.mismatch(&other.spec));
        }
        limit.check(projected_product_terms(self, other))?;
        Ok(self.multiply_same_spec(other))
    }

    /// n-fold product by repeated left multiplication, each step guarded
    /// as in [`AlgebraElement::multiply_within`]. A projection beyond
    /// `limit` aborts the whole computation.
    pub fn power(&self, exponent: u32, limit: TermLimit) -> Result<Self> {
        assert!(exponent >= 1, "power requires a positive exponent");
        let mut accumulator = self.clone();
        for _ in 1..exponent {
            accumulator = self.multiply_within(&accumulator, limit)?;
        }
        Ok(accumulator)
    }

    /// The involution extending w -> w^-1 linearly.
    pub fn adjoint(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(word, coefficient)| (word.invert(), coefficient.clone()))
            .collect();
        Self {
            spec: self.spec,
            terms,
        }
    }

    /// The canonical trace: the coefficient of the identity word.
    pub fn trace(&self) -> BigRational {
        self.coefficient(&ReducedWord::identity(self.spec))
    }

    /// Longest word in the support; zero for the zero element.
    fn max_word_len(&self) -> usize {
        self.terms.keys().map(ReducedWord::len).max().unwrap_or(0)
    }

    /// Some(parity) when every word in the support has the same length
    /// parity, as is the case for powers of G.
    fn length_parity(&self) -> Option<usize> {
        let mut lengths = self.terms.keys().map(|w| w.len() % 2);
        let first = lengths.next()?;
        lengths.all(|p| p == first).then_some(first)
    }

    /// Serializes to the `radial.element.v1` JSON document, terms in the
    /// deterministic word order.
    ///
    /// Keys use the display spelling of each word. At N >= 5 the single
    /// letter `e` (the fifth generator) shares its spelling with the
    /// identity, and parsing resolves `"e"` to the identity; a document
    /// holding that one word does not round-trip.
    pub fn to_json_string(&self) -> String {
        let mut out = String::from("{\"schema\":\"radial.element.v1\",\"N\":");
        out.push_str(&self.spec.generators().to_string());
        out.push_str(",\"terms\":{");
        for (i, (word, coefficient)) in self.sorted_terms().into_iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            // Word text is ASCII letters or "e" and coefficients are
            // decimal "p" or "p/q", so no JSON escaping is ever needed.
            out.push('"');
            out.push_str(&word.to_string());
            out.push_str("\":\"");
            out.push_str(&coefficient.to_string());
            out.push('"');
        }
        out.push_str("}}");
        out
    }

    /// Parses a `radial.element.v1` document.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let object = value
            .as_object()
            .ok_or_else(|| Error::Json("expected a JSON object".into()))?;
        match object.get("schema").and_then(|s| s.as_str()) {
            Some("radial.element.v1") => {}
            other => {
                return Err(Error::Json(format!(
                    "expected schema \"radial.element.v1\", got {other:?}"
                )))
            }
        }
        let generators = object
            .get("N")
            .and_then(|n| n.as_u64())
            .ok_or_else(|| Error::Json("missing numeric field \"N\"".into()))?;
        let spec = GroupSpec::new(u32::try_from(generators).unwrap_or(u32::MAX))?;
        let terms = object
            .get("terms")
            .and_then(|t| t.as_object())
            .ok_or_else(|| Error::Json("missing object field \"terms\"".into()))?;
        let mut pairs = Vec::with_capacity(terms.len());
        for (key, value) in terms {
            let word = ReducedWord::parse(key, spec)?;
            let text = value
                .as_str()
                .ok_or_else(|| Error::Json(format!("coefficient of {key:?} is not a string")))?;
            let coefficient = BigRational::from_str(text)
                .map_err(|e| Error::Json(format!("coefficient {text:?}: {e}")))?;
            pairs.push((word, coefficient));
        }
        Self::from_terms(spec, pairs)
    }
}

fn convolve_block<'a>(
    left: &[(&'a ReducedWord, &'a BigRational)],
    right: &[(&'a ReducedWord, &'a BigRational)],
) -> HashMap<ReducedWord, BigRational> {
    let mut accumulator =
        HashMap::with_capacity(left.len().saturating_mul(right.len()).min(1 << 20));
    for &(left_word, left_coefficient) in left {
        for &(right_word, right_coefficient) in right {
            let word = left_word.concat_same_spec(right_word);
            *accumulator.entry(word).or_insert_with(BigRational::zero) +=
                left_coefficient * right_coefficient;
        }
    }
    accumulator
}

fn merge_term_maps(
    a: HashMap<ReducedWord, BigRational>,
    b: HashMap<ReducedWord, BigRational>,
) -> HashMap<ReducedWord, BigRational> {
    let (mut large, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    for (word, coefficient) in small {
        *large.entry(word).or_insert_with(BigRational::zero) += coefficient;
    }
    large
}

/// Upper bound on the support size of a product, used by the term-limit
/// guard. Two bounds are intersected: the pair count, and the total number
/// of reduced words of feasible length (restricted to one parity when both
/// factors are parity-homogeneous, as powers of G are).
pub fn projected_product_terms(left: &AlgebraElement, right: &AlgebraElement) -> BigUint {
    let pair_bound = BigUint::from(left.term_count()) * BigUint::from(right.term_count());
    let max_len = left.max_word_len() + right.max_word_len();
    let parity = match (left.length_parity(), right.length_parity()) {
        (Some(a), Some(b)) => Some((a + b) % 2),
        _ => None,
    };
    let sphere_bound: BigUint = (0..=max_len)
        .filter(|len| parity.map_or(true, |p| len % 2 == p))
        .map(|len| count_words_of_length(left.spec(), len))
        .sum();
    pair_bound.min(sphere_bound)
}

/// All reduced words of the given length, built by extending each word with
/// every letter except the inverse of its last.
pub(crate) fn sphere_words(spec: GroupSpec, length: usize) -> Vec<ReducedWord> {
    if length == 0 {
        return vec![ReducedWord::identity(spec)];
    }
    let alphabet: Vec<Letter> = spec.alphabet().collect();
    let mut words: Vec<Vec<Letter>> = alphabet.iter().map(|&l| vec![l]).collect();
    for _ in 1..length {
        let mut extended = Vec::with_capacity(words.len() * (alphabet.len() - 1));
        for word in &words {
            let last = *word.last().expect("words are nonempty here");
            for &letter in &alphabet {
                if letter != last.inverse() {
                    let mut longer = Vec::with_capacity(word.len() + 1);
                    longer.extend_from_slice(word);
                    longer.push(letter);
                    extended.push(longer);
                }
            }
        }
        words = extended;
    }
    words
        .into_iter()
        .map(|letters| ReducedWord::from_reduced_parts(spec, letters))
        .collect()
}

/// The sphere X_n: the sum of all reduced words of length n, each with
/// coefficient 1. Refused up front when the sphere has more than `limit`
/// words.
pub fn sphere(spec: GroupSpec, length: usize, limit: TermLimit) -> Result<AlgebraElement> {
    limit.check(count_words_of_length(spec, length))?;
    let terms = sphere_words(spec, length)
        .into_iter()
        .map(|word| (word, BigRational::one()))
        .collect();
    Ok(AlgebraElement::from_map(spec, terms))
}

/// The radial element G = X_1, the sum of all generators and their
/// inverses. At most 52 terms, so never guarded.
pub fn generating_operator(spec: GroupSpec) -> AlgebraElement {
    let terms = spec
        .alphabet()
        .map(|letter| {
            (
                ReducedWord::from_reduced_parts(spec, vec![letter]),
                BigRational::one(),
            )
        })
        .collect();
    AlgebraElement::from_map(spec, terms)
}
