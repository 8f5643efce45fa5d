//! Freely reduced words over a fixed set of free generators.
//!
//! Every group element is stored as its unique reduced word, a sequence of
//! letters containing no adjacent generator/inverse pair. Words print in a
//! compact text form: the k-th lowercase ASCII letter is the k-th generator,
//! the matching uppercase letter is its inverse, and the identity prints as
//! `"e"`. Concatenation cancels at the junction only, so combining two
//! reduced words costs at most the length of the shorter one.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// The ambient free group, identified by its number of generators N.
///
/// N is bounded by the single-letter text alphabet (26) and must be at
/// least 2 so that the commutator of the first two generators is a
/// nontrivial reduced word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GroupSpec {
    generators: u32,
}

impl GroupSpec {
    pub const MIN_GENERATORS: u32 = 2;
    pub const MAX_GENERATORS: u32 = 26;

    pub fn new(generators: u32) -> Result<Self> {
        if (Self::MIN_GENERATORS..=Self::MAX_GENERATORS).contains(&generators) {
            Ok(Self { generators })
        } else {
            Err(Error::InvalidGeneratorCount(generators))
        }
    }

    /// N, the number of free generators.
    pub fn generators(&self) -> u32 {
        self.generators
    }

    /// 2N, the number of one-letter words and the degree of every vertex of
    /// the Cayley graph.
    pub fn degree(&self) -> u32 {
        2 * self.generators
    }

    /// All 2N letters, generators first within each index.
    pub fn alphabet(&self) -> impl Iterator<Item = Letter> {
        (1..=self.generators as u8)
            .flat_map(|i| [Letter::generator(i), Letter::inverse_generator(i)])
    }

    pub(crate) fn check_letter(&self, letter: Letter) -> Result<()> {
        if u32::from(letter.index()) <= self.generators {
            Ok(())
        } else {
            Err(Error::LetterOutOfRange {
                index: letter.index(),
                generators: self.generators,
            })
        }
    }

    pub(crate) fn mismatch(&self, other: &GroupSpec) -> Error {
        Error::SpecMismatch {
            left: self.generators,
            right: other.generators,
        }
    }
}

/// One symbol of a word: the k-th generator or its inverse, stored as the
/// nonzero signed byte +k or -k.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(i8);

impl Letter {
    /// The k-th generator, k in 1..=26.
    pub fn generator(index: u8) -> Self {
        assert!((1..=26).contains(&index), "letter index out of range");
        Self(index as i8)
    }

    /// The inverse of the k-th generator.
    pub fn inverse_generator(index: u8) -> Self {
        assert!((1..=26).contains(&index), "letter index out of range");
        Self(-(index as i8))
    }

    /// 1-based generator index.
    pub fn index(&self) -> u8 {
        self.0.unsigned_abs()
    }

    pub fn is_inverse(&self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Self {
        Self(-self.0)
    }

    fn to_char(self) -> char {
        let base = if self.is_inverse() { b'A' } else { b'a' };
        (base + self.index() - 1) as char
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Letters order by generator index, with each generator just before its
/// inverse: a < A < b < B < ...
impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.index(), self.is_inverse()).cmp(&(other.index(), other.is_inverse()))
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A freely reduced word, the canonical form of a free group element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    spec: GroupSpec,
    letters: Vec<Letter>,
}

impl ReducedWord {
    /// The empty word.
    pub fn identity(spec: GroupSpec) -> Self {
        Self {
            spec,
            letters: Vec::new(),
        }
    }

    /// Freely reduces an arbitrary letter sequence.
    ///
    /// A single left-to-right pass with a stack removes every adjacent
    /// inverse pair, including pairs that only become adjacent after inner
    /// cancellations. Time O(len).
    pub fn reduce(spec: GroupSpec, letters: &[Letter]) -> Result<Self> {
        let mut stack: Vec<Letter> = Vec::with_capacity(letters.len());
        for &letter in letters {
            spec.check_letter(letter)?;
            if stack.last() == Some(&letter.inverse()) {
                stack.pop();
            } else {
                stack.push(letter);
            }
        }
        Ok(Self {
            spec,
            letters: stack,
        })
    }

    /// Wraps a sequence that is already reduced. Internal constructor for
    /// enumeration code that builds words letter by letter.
    pub(crate) fn from_reduced_parts(spec: GroupSpec, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.windows(2).all(|pair| pair[0] != pair[1].inverse()));
        Self { spec, letters }
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Word length |w| in the word metric.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Group multiplication. Both factors are reduced, so cancellation can
    /// only happen at the junction; the suffix of `self` and the prefix of
    /// `other` are trimmed in lockstep and the remainders spliced.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.spec != other.spec {
            return Err(self.spec.mismatch(&other.spec));
        }
        Ok(self.concat_same_spec(other))
    }

    pub(crate) fn concat_same_spec(&self, other: &Self) -> Self {
        debug_assert_eq!(self.spec, other.spec);
        let left = &self.letters;
        let right = &other.letters;
        let mut i = left.len();
        let mut j = 0;
        while i > 0 && j < right.len() && left[i - 1] == right[j].inverse() {
            i -= 1;
            j += 1;
        }
        let mut letters = Vec::with_capacity(i + right.len() - j);
        letters.extend_from_slice(&left[..i]);
        letters.extend_from_slice(&right[j..]);
        Self {
            spec: self.spec,
            letters,
        }
    }

    /// Group inverse: reverse the letters and invert each one. The result
    /// of reversing a reduced word is again reduced.
    pub fn invert(&self) -> Self {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|letter| letter.inverse())
            .collect();
        Self {
            spec: self.spec,
            letters,
        }
    }

    /// Parses the text form and freely reduces it.
    ///
    /// Grammar: the single character `e` is the identity; otherwise every
    /// non-whitespace character must be a letter for a generator within N.
    /// For N >= 5 a bare `e` still means the identity, shadowing the
    /// single-letter word g_5; inside longer words `e` is g_5 as usual.
    pub fn parse(text: &str, spec: GroupSpec) -> Result<Self> {
        let symbols: Vec<(usize, char)> = text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        if symbols.is_empty() {
            return Err(Error::Parse {
                position: 0,
                reason: "empty input; write \"e\" for the identity".into(),
            });
        }
        if symbols.len() == 1 && symbols[0].1 == 'e' {
            return Ok(Self::identity(spec));
        }
        let mut letters = Vec::with_capacity(symbols.len());
        for (position, c) in symbols {
            let letter = match c {
                'a'..='z' => Letter::generator(c as u8 - b'a' + 1),
                'A'..='Z' => Letter::inverse_generator(c as u8 - b'A' + 1),
                _ => {
                    return Err(Error::Parse {
                        position,
                        reason: format!("unexpected character {c:?}"),
                    })
                }
            };
            if spec.check_letter(letter).is_err() {
                return Err(Error::Parse {
                    position,
                    reason: format!(
                        "letter {c:?} refers to generator {} but N={}",
                        letter.index(),
                        spec.generators()
                    ),
                });
            }
            letters.push(letter);
        }
        Self::reduce(spec, &letters)
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for letter in &self.letters {
            write!(f, "{}", letter.to_char())?;
        }
        Ok(())
    }
}

// Debug shows the text form plus N, which keeps property-test failure
// output readable.
impl fmt::Debug for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ReducedWord({}, N={})", self, self.spec.generators())
    }
}

impl PartialOrd for ReducedWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used for deterministic serialization: by length first, then
/// lexicographically by letter.
impl Ord for ReducedWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.spec
            .cmp(&other.spec)
            .then_with(|| self.letters.len().cmp(&other.letters.len()))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

/// Number of reduced words of the given length: 1 for the identity, and
/// 2N (2N-1)^(n-1) otherwise (2N choices for the first letter, then
/// anything but the inverse of the previous letter).
pub fn count_words_of_length(spec: GroupSpec, length: usize) -> BigUint {
    if length == 0 {
        return BigUint::one();
    }
    BigUint::from(spec.degree()) * BigUint::from(spec.degree() - 1).pow(length as u32 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: u32) -> GroupSpec {
        GroupSpec::new(n).unwrap()
    }

    fn w(text: &str, n: u32) -> ReducedWord {
        ReducedWord::parse(text, spec(n)).unwrap()
    }

    /// Reference reduction: rescan for any adjacent inverse pair and delete
    /// it, until no pair remains. Slow but obviously correct.
    fn naive_reduce(spec: GroupSpec, letters: &[Letter]) -> ReducedWord {
        let mut current: Vec<Letter> = letters.to_vec();
        loop {
            let position = current
                .windows(2)
                .position(|pair| pair[0] == pair[1].inverse());
            match position {
                Some(i) => {
                    current.drain(i..i + 2);
                }
                None => break,
            }
        }
        ReducedWord::from_reduced_parts(spec, current)
    }

    #[test]
    fn spec_bounds() {
        assert!(GroupSpec::new(2).is_ok());
        assert!(GroupSpec::new(26).is_ok());
        assert_eq!(GroupSpec::new(1), Err(Error::InvalidGeneratorCount(1)));
        assert_eq!(GroupSpec::new(27), Err(Error::InvalidGeneratorCount(27)));
        assert_eq!(spec(3).degree(), 6);
    }

    #[test]
    fn reduce_cancels_adjacent_pair() {
        let s = spec(2);
        let a = Letter::generator(1);
        // a a^-1 -> e
        let word = ReducedWord::reduce(s, &[a, a.inverse()]).unwrap();
        assert!(word.is_identity());
        // a b b^-1 a -> a a
        let b = Letter::generator(2);
        let word = ReducedWord::reduce(s, &[a, b, b.inverse(), a]).unwrap();
        assert_eq!(word.to_string(), "aa");
    }

    #[test]
    fn reduce_cascades_through_nested_pairs() {
        // a b b^-1 a^-1 collapses completely.
        let s = spec(2);
        let a = Letter::generator(1);
        let b = Letter::generator(2);
        let word = ReducedWord::reduce(s, &[a, b, b.inverse(), a.inverse()]).unwrap();
        assert!(word.is_identity());
    }

    #[test]
    fn reduce_rejects_letters_beyond_n() {
        let c = Letter::generator(3);
        assert_eq!(
            ReducedWord::reduce(spec(2), &[c]),
            Err(Error::LetterOutOfRange {
                index: 3,
                generators: 2
            })
        );
    }

    #[test]
    fn concat_cancels_at_junction_only() {
        // ab . b^-1 a = a a
        assert_eq!(w("ab", 2).concat(&w("Ba", 2)).unwrap(), w("aa", 2));
        // ab . b = abb, no cancellation
        assert_eq!(w("ab", 2).concat(&w("b", 2)).unwrap(), w("abb", 2));
        // full cancellation down to the identity
        assert_eq!(w("abc", 3).concat(&w("CBA", 3)).unwrap(), w("e", 3));
    }

    #[test]
    fn concat_rejects_mixed_specs() {
        assert_eq!(
            w("a", 2).concat(&w("a", 3)),
            Err(Error::SpecMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn invert_reverses_and_flips() {
        assert_eq!(w("abAB", 2).invert(), w("baBA", 2));
        assert_eq!(w("e", 2).invert(), w("e", 2));
        let word = w("aBc", 3);
        assert!(word.concat(&word.invert()).unwrap().is_identity());
    }

    #[test]
    fn parse_examples() {
        assert_eq!(w("abAB", 2).len(), 4);
        assert!(w("e", 2).is_identity());
        assert!(w(" e ", 2).is_identity());
        // input reduces on the way in
        assert_eq!(w("aA", 2), w("e", 2));
        assert_eq!(w("a bA  B", 2), w("abAB", 2));
    }

    #[test]
    fn parse_errors_name_the_position() {
        assert_eq!(
            ReducedWord::parse("ab1", spec(2)),
            Err(Error::Parse {
                position: 2,
                reason: "unexpected character '1'".into()
            })
        );
        match ReducedWord::parse("abc", spec(2)) {
            Err(Error::Parse { position: 2, .. }) => {}
            other => panic!("expected parse error at position 2, got {other:?}"),
        }
        assert!(ReducedWord::parse("", spec(2)).is_err());
        assert!(ReducedWord::parse("   ", spec(2)).is_err());
    }

    #[test]
    fn bare_e_is_identity_even_when_g5_exists() {
        // For N >= 5 the character 'e' doubles as the 5th generator. The
        // grammar resolves the bare word "e" to the identity; inside longer
        // words 'e' is g_5.
        let s = spec(6);
        assert!(ReducedWord::parse("e", s).unwrap().is_identity());
        let ge = ReducedWord::parse("ea", s).unwrap();
        assert_eq!(ge.len(), 2);
        assert_eq!(ge.letters()[0], Letter::generator(5));
        assert_eq!(ReducedWord::parse("eE", s).unwrap(), w("e", 6));
        // the lone fifth generator therefore prints ambiguously
        let g5 = ReducedWord::reduce(s, &[Letter::generator(5)]).unwrap();
        assert_eq!(g5.to_string(), "e");
    }

    #[test]
    fn display_round_trip() {
        for text in ["e", "a", "A", "abAB", "baBA", "zZy"] {
            let n = 26;
            let word = w(text, n);
            assert_eq!(
                ReducedWord::parse(&word.to_string(), spec(n)).unwrap(),
                word
            );
        }
    }

    #[test]
    fn order_is_by_length_then_letters() {
        let mut words = vec![
            w("b", 2),
            w("aa", 2),
            w("e", 2),
            w("A", 2),
            w("a", 2),
            w("ab", 2),
            w("aB", 2),
        ];
        words.sort();
        let printed: Vec<String> = words.iter().map(|x| x.to_string()).collect();
        assert_eq!(printed, ["e", "a", "A", "b", "aa", "ab", "aB"]);
    }

    #[test]
    fn word_counts() {
        // N=2: 1, 4, 12, 36, 108, ...
        let s = spec(2);
        let counts: Vec<BigUint> = (0..5).map(|n| count_words_of_length(s, n)).collect();
        assert_eq!(counts, [1u32, 4, 12, 36, 108].map(BigUint::from));
        // N=3: degree 6
        assert_eq!(count_words_of_length(spec(3), 3), BigUint::from(150u32));
    }

    #[test]
    fn stack_reduce_matches_naive_fixpoint_reduce() {
        // Deterministic sweep over all letter sequences of length <= 6 on
        // N=2; the property suite covers longer random sequences.
        let s = spec(2);
        let alphabet: Vec<Letter> = s.alphabet().collect();
        let mut sequences: Vec<Vec<Letter>> = vec![Vec::new()];
        for _ in 0..6 {
            let mut next = Vec::new();
            for seq in &sequences {
                for &letter in &alphabet {
                    let mut extended = seq.clone();
                    extended.push(letter);
                    next.push(extended);
                }
            }
            for seq in &next {
                assert_eq!(
                    ReducedWord::reduce(s, seq).unwrap(),
                    naive_reduce(s, seq),
                    "sequence {seq:?}"
                );
            }
            sequences = next;
        }
    }
}
