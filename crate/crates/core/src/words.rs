//! Words over a finite ordered alphabet, their rotation classes, and the
//! admissible-set sieve.
//!
//! A word is primitive ("reduced") when it is not a proper power `v^p`,
//! `p > 1`. Rotation classes of primitive words are represented by their
//! least rotation. The sieve repeatedly removes a shortest word `j` from a
//! working set `J` and replaces `J` by `{ j^p j' : j' in J \ {j}, p >= 0 }`;
//! the removed words form a set in bijection with primitive rotation classes.
//! All infinite sets are truncated to a length budget `L`, which is exact
//! because the replacement step never shortens a word.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordsError {
    #[error("empty word has no primitivity status")]
    EmptyWord,
    #[error("alphabet must be nonempty")]
    EmptyAlphabet,
    #[error("letter {0:?} appears twice in the alphabet")]
    DuplicateLetter(char),
    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(char),
    #[error("word {0} is not an element of the set")]
    NotInSet(String),
    #[error("length bound must be at least 1")]
    InvalidBound,
}

/// Ordered finite set of single-character symbols.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    pub fn new(letters: impl IntoIterator<Item = char>) -> Result<Self, WordsError> {
        let letters: Vec<char> = letters.into_iter().collect();
        if letters.is_empty() {
            return Err(WordsError::EmptyAlphabet);
        }
        for (i, c) in letters.iter().enumerate() {
            if letters[..i].contains(c) {
                return Err(WordsError::DuplicateLetter(*c));
            }
        }
        Ok(Alphabet { letters })
    }

    /// The first `k` lowercase latin letters.
    pub fn latin(k: usize) -> Self {
        assert!((1..=26).contains(&k));
        Alphabet { letters: ('a'..='z').take(k).collect() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn parse_word(&self, s: &str) -> Result<Word, WordsError> {
        s.chars()
            .map(|c| {
                self.letters
                    .iter()
                    .position(|&l| l == c)
                    .map(|i| i as u32)
                    .ok_or(WordsError::UnknownLetter(c))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    pub fn render(&self, w: &Word) -> String {
        w.0.iter().map(|&i| self.letters[i as usize]).collect()
    }

    /// Single-letter words in alphabet order.
    pub fn letter_words(&self) -> Vec<Word> {
        (0..self.len() as u32).map(|i| Word(vec![i])).collect()
    }
}

impl TryFrom<Vec<String>> for Alphabet {
    type Error = WordsError;
    fn try_from(v: Vec<String>) -> Result<Self, WordsError> {
        let mut letters = Vec::with_capacity(v.len());
        for s in v {
            let mut chars = s.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => letters.push(c),
                (Some(c), Some(_)) => return Err(WordsError::UnknownLetter(c)),
                (None, _) => return Err(WordsError::EmptyAlphabet),
            }
        }
        Alphabet::new(letters)
    }
}

impl From<Alphabet> for Vec<String> {
    fn from(a: Alphabet) -> Self {
        a.letters.iter().map(|c| c.to_string()).collect()
    }
}

/// A word, stored as letter indices into its alphabet.
///
/// The derived order is lexicographic with a proper prefix sorting first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, p: usize) -> Word {
        Word(self.0.repeat(p))
    }

    /// Left rotation by `k` positions.
    pub fn rotate(&self, k: usize) -> Word {
        if self.is_empty() {
            return self.clone();
        }
        let mut v = self.0.clone();
        v.rotate_left(k % self.len());
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "<{}>", parts.join(" "))
    }
}

/// Rotation class of a nonempty word, held as its least rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord(Word);

impl CyclicWord {
    pub fn canonical(&self) -> &Word {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Length of the shortest period of `s`, via the prefix (failure) function.
fn minimal_period(s: &[u32]) -> usize {
    let n = s.len();
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && s[i] != s[k] {
            k = fail[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i] = k;
    }
    n - fail[n - 1]
}

/// True iff `u` is primitive: not of the form `v^p` with `p > 1`.
pub fn is_reduced(u: &Word) -> Result<bool, WordsError> {
    if u.is_empty() {
        return Err(WordsError::EmptyWord);
    }
    let period = minimal_period(&u.0);
    Ok(period == u.len() || u.len() % period != 0)
}

/// Start index of the least rotation (two-pointer minimum expression).
fn least_rotation_start(s: &[u32]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = s[(i + k) % n];
        let b = s[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

pub fn cyclic_canonical(u: &Word) -> Result<CyclicWord, WordsError> {
    if u.is_empty() {
        return Err(WordsError::EmptyWord);
    }
    Ok(CyclicWord(u.rotate(least_rotation_start(&u.0))))
}

/// All words of length exactly `n` over `k` letters, in lexicographic order.
fn all_words(k: usize, n: usize) -> impl Iterator<Item = Word> {
    let total = (k as u64).pow(n as u32);
    (0..total).map(move |mut code| {
        let mut v = vec![0u32; n];
        for slot in v.iter_mut().rev() {
            *slot = (code % k as u64) as u32;
            code /= k as u64;
        }
        Word(v)
    })
}

/// Canonical representatives of rotation classes of primitive words of
/// length `1..=max_len`, by exhaustive filtering.
pub fn enumerate_cw0(alphabet: &Alphabet, max_len: usize) -> Result<BTreeSet<CyclicWord>, WordsError> {
    if max_len == 0 {
        return Err(WordsError::InvalidBound);
    }
    let mut out = BTreeSet::new();
    for n in 1..=max_len {
        for w in all_words(alphabet.len(), n) {
            if is_reduced(&w)? {
                out.insert(cyclic_canonical(&w)?);
            }
        }
    }
    Ok(out)
}

/// `{ j^p j' : j' in J \ {j}, p >= 0 }`, truncated to length `<= max_len`.
pub fn zset(set: &BTreeSet<Word>, j: &Word, max_len: usize) -> Result<BTreeSet<Word>, WordsError> {
    if !set.contains(j) {
        return Err(WordsError::NotInSet(j.to_string()));
    }
    let mut out = BTreeSet::new();
    for other in set.iter().filter(|w| *w != j) {
        let mut prefix = Word::empty();
        while prefix.len() + other.len() <= max_len {
            out.insert(prefix.concat(other));
            if j.is_empty() {
                break;
            }
            prefix = prefix.concat(j);
        }
    }
    Ok(out)
}

/// Snapshot of the sieve after `step` iterations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveState {
    pub step: usize,
    /// The working set, truncated to the length budget.
    pub working: BTreeSet<Word>,
    /// Words removed so far, in order.
    pub emitted: Vec<Word>,
    /// Length of each emitted word, in order.
    pub min_lengths: Vec<usize>,
}

impl SieveState {
    /// The next word the sieve would remove: shortest, then lexicographically least.
    pub fn next_choice(&self) -> Option<&Word> {
        self.working.iter().min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveOutcome {
    pub final_state: SieveState,
    pub admissible: Vec<Word>,
}

impl SieveOutcome {
    pub fn min_lengths_nondecreasing(&self) -> bool {
        self.final_state.min_lengths.windows(2).all(|w| w[0] <= w[1])
    }
}

pub fn sieve(alphabet: &Alphabet, max_len: usize) -> Result<SieveOutcome, WordsError> {
    if max_len == 0 {
        return Err(WordsError::InvalidBound);
    }
    let letters = alphabet.letter_words();
    if alphabet.len() <= 1 {
        let state = SieveState {
            step: 0,
            working: BTreeSet::new(),
            emitted: letters.clone(),
            min_lengths: vec![1; letters.len()],
        };
        return Ok(SieveOutcome { final_state: state, admissible: letters });
    }
    let mut state = SieveState {
        step: 0,
        working: letters.into_iter().collect(),
        emitted: Vec::new(),
        min_lengths: Vec::new(),
    };
    while let Some(j) = state.next_choice().cloned() {
        state.working = zset(&state.working, &j, max_len)?;
        state.min_lengths.push(j.len());
        state.emitted.push(j);
        state.step += 1;
    }
    let admissible = state.emitted.clone();
    Ok(SieveOutcome { final_state: state, admissible })
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AdmissibleReport {
    pub non_reduced: Vec<Word>,
    /// Pairs of distinct words with the same rotation class.
    pub collisions: Vec<(Word, Word)>,
    /// Primitive classes of length `<= L` not hit by any word.
    pub missing: Vec<CyclicWord>,
    pub checked: usize,
}

impl AdmissibleReport {
    pub fn passed(&self) -> bool {
        self.non_reduced.is_empty() && self.collisions.is_empty() && self.missing.is_empty()
    }
}

/// Checks that `y` (restricted to length `<= max_len`) maps bijectively onto
/// the primitive rotation classes of length `<= max_len`.
pub fn verify_admissible(
    y: &[Word],
    alphabet: &Alphabet,
    max_len: usize,
) -> Result<AdmissibleReport, WordsError> {
    let expected = enumerate_cw0(alphabet, max_len)?;
    let mut report = AdmissibleReport::default();
    let mut seen: std::collections::BTreeMap<CyclicWord, Word> = Default::default();
    for w in y.iter().filter(|w| w.len() <= max_len) {
        report.checked += 1;
        if w.is_empty() || !is_reduced(w)? {
            report.non_reduced.push(w.clone());
            continue;
        }
        let class = cyclic_canonical(w)?;
        match seen.get(&class) {
            Some(prev) => report.collisions.push((prev.clone(), w.clone())),
            None => {
                seen.insert(class, w.clone());
            }
        }
    }
    report.missing = expected.into_iter().filter(|c| !seen.contains_key(c)).collect();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::latin(2)
    }

    fn w(s: &str) -> Word {
        Alphabet::latin(3).parse_word(s).unwrap()
    }

    fn set(words: &[&str]) -> BTreeSet<Word> {
        words.iter().map(|s| w(s)).collect()
    }

    #[test]
    fn primitivity_examples() {
        assert!(!is_reduced(&w("abab")).unwrap());
        assert!(is_reduced(&w("a")).unwrap());
        assert!(is_reduced(&w("aabab")).unwrap());
        assert!(!is_reduced(&w("aaa")).unwrap());
        assert!(is_reduced(&w("aba")).unwrap());
        assert_eq!(is_reduced(&Word::empty()), Err(WordsError::EmptyWord));
    }

    #[test]
    fn least_rotation_examples() {
        assert_eq!(cyclic_canonical(&w("ba")).unwrap().canonical(), &w("ab"));
        assert_eq!(cyclic_canonical(&w("a")).unwrap().canonical(), &w("a"));
        assert_eq!(cyclic_canonical(&w("cab")).unwrap().canonical(), &w("abc"));
        assert_eq!(cyclic_canonical(&w("abab")).unwrap().canonical(), &w("abab"));
        assert!(cyclic_canonical(&Word::empty()).is_err());
    }

    #[test]
    fn cw0_small_cases() {
        let one = enumerate_cw0(&ab(), 1).unwrap();
        assert_eq!(one.len(), 2);
        let four = enumerate_cw0(&ab(), 4).unwrap();
        let counts: Vec<usize> = (1..=4).map(|n| four.iter().filter(|c| c.len() == n).count()).collect();
        assert_eq!(counts, vec![2, 1, 2, 3]);
        assert_eq!(enumerate_cw0(&Alphabet::latin(1), 5).unwrap().len(), 1);
        assert_eq!(enumerate_cw0(&ab(), 0), Err(WordsError::InvalidBound));
    }

    #[test]
    fn zset_examples() {
        assert_eq!(zset(&set(&["a", "b"]), &w("a"), 4).unwrap(), set(&["b", "ab", "aab", "aaab"]));
        assert!(zset(&set(&["a"]), &w("a"), 7).unwrap().is_empty());
        assert_eq!(zset(&set(&["b", "ab"]), &w("b"), 4).unwrap(), set(&["ab", "bab", "bbab"]));
        assert!(matches!(zset(&set(&["a"]), &w("b"), 3), Err(WordsError::NotInSet(_))));
    }

    #[test]
    fn sieve_examples() {
        let out = sieve(&ab(), 2).unwrap();
        assert_eq!(out.admissible[..3], [w("a"), w("b"), w("ab")]);
        let out = sieve(&ab(), 4).unwrap();
        assert_eq!(out.admissible.len(), 8);
        assert!(out.min_lengths_nondecreasing());
        assert!(out.final_state.working.is_empty());
        let single = sieve(&Alphabet::latin(1), 3).unwrap();
        assert_eq!(single.admissible, vec![w("a")]);
    }

    #[test]
    fn verify_examples() {
        let y = sieve(&ab(), 6).unwrap().admissible;
        assert!(verify_admissible(&y, &ab(), 6).unwrap().passed());

        let bad = [w("a"), w("b"), w("ab"), w("ba")];
        let rep = verify_admissible(&bad, &ab(), 2).unwrap();
        assert!(!rep.passed());
        assert_eq!(rep.collisions, vec![(w("ab"), w("ba"))]);

        let rep = verify_admissible(&[w("a")], &ab(), 1).unwrap();
        assert_eq!(rep.missing.len(), 1);
        assert_eq!(rep.missing[0].canonical(), &w("b"));

        let rep = verify_admissible(&[w("a"), w("b"), w("aa")], &ab(), 2).unwrap();
        assert_eq!(rep.non_reduced, vec![w("aa")]);
    }

    #[test]
    fn alphabet_validation() {
        assert_eq!(Alphabet::new([]), Err(WordsError::EmptyAlphabet));
        assert_eq!(Alphabet::new(['a', 'a']), Err(WordsError::DuplicateLetter('a')));
        assert_eq!(ab().parse_word("ac"), Err(WordsError::UnknownLetter('c')));
        let a: Alphabet = serde_json::from_str(r#"["x","y"]"#).unwrap();
        assert_eq!(a.render(&a.parse_word("yx").unwrap()), "yx");
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"["x","y"]"#);
    }
}
