//! Combinatorial-line templates over [m]^n: the wildcard set, its minimal
//! interval decomposition, and canonical enumeration with chunking.

use std::fmt;

use crate::error::{Error, Result};
use crate::words::{checked_pow, Word};

/// One position of a line template.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Symbol {
    /// A fixed letter of [m].
    Letter(u8),
    /// A wildcard position; sorts after every letter.
    Star,
}

/// A combinatorial line, encoded as a word over {1,..,m} plus `★` with at
/// least one `★`. The star positions form the wildcard set S.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LineTemplate {
    symbols: Vec<Symbol>,
    m: u8,
}

impl LineTemplate {
    pub fn new(symbols: Vec<Symbol>, m: u8) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidAlphabet { m });
        }
        let mut stars = 0usize;
        for &sym in &symbols {
            match sym {
                Symbol::Star => stars += 1,
                Symbol::Letter(letter) => {
                    if letter == 0 || letter > m {
                        return Err(Error::LetterOutOfRange { letter, m });
                    }
                }
            }
        }
        if stars == 0 {
            return Err(Error::EmptyWildcardSet);
        }
        Ok(LineTemplate { symbols, m })
    }

    /// Parses the ASCII form: digits plus `*` for the wildcard.
    pub fn from_text(text: &str, m: u8) -> Result<Self> {
        let mut symbols = Vec::with_capacity(text.len());
        for ch in text.chars() {
            if ch == '*' {
                symbols.push(Symbol::Star);
            } else {
                let digit = ch.to_digit(10).ok_or(Error::BadSymbol { ch })?;
                if digit == 0 {
                    return Err(Error::BadSymbol { ch });
                }
                symbols.push(Symbol::Letter(digit as u8));
            }
        }
        LineTemplate::new(symbols, m)
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// The wildcard set S as sorted 0-based positions. Never empty.
    pub fn wildcard_set(&self) -> Vec<usize> {
        self.symbols
            .iter()
            .enumerate()
            .filter_map(|(j, &sym)| (sym == Symbol::Star).then_some(j))
            .collect()
    }

    /// The line point x_i: every star replaced by the letter i.
    pub fn point(&self, letter: u8) -> Result<Word> {
        if letter == 0 || letter > self.m {
            return Err(Error::LetterOutOfRange { letter, m: self.m });
        }
        let letters = self
            .symbols
            .iter()
            .map(|&sym| match sym {
                Symbol::Letter(fixed) => fixed,
                Symbol::Star => letter,
            })
            .collect();
        Word::new(letters, self.m)
    }

    /// All m points {x_1, .., x_m} in letter order.
    pub fn line_points(&self) -> Vec<Word> {
        (1..=self.m).map(|i| self.point(i).unwrap()).collect()
    }

    /// Number of maximal star runs; the minimal interval count q of S.
    pub fn interval_count(&self) -> usize {
        let mut q = 0;
        let mut in_run = false;
        for &sym in &self.symbols {
            let star = sym == Symbol::Star;
            if star && !in_run {
                q += 1;
            }
            in_run = star;
        }
        q
    }

    /// Position in the canonical enumeration: lexicographic over symbol
    /// strings with digit order 1 < 2 < .. < m < ★, i.e. base (m+1).
    pub fn canonical_index(&self) -> Result<u64> {
        let base = self.m as u64 + 1;
        let mut acc: u64 = 0;
        for &sym in &self.symbols {
            let digit = match sym {
                Symbol::Letter(letter) => (letter - 1) as u64,
                Symbol::Star => self.m as u64,
            };
            acc = acc
                .checked_mul(base)
                .and_then(|a| a.checked_add(digit))
                .ok_or(Error::SpaceTooLarge { base, exp: self.symbols.len() })?;
        }
        Ok(acc)
    }

    pub fn from_canonical_index(index: u64, m: u8, n: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidAlphabet { m });
        }
        let base = m as u64 + 1;
        let space = checked_pow(base, n)?;
        if index >= space {
            return Err(Error::IndexOutOfRange { index, space });
        }
        let mut symbols = vec![Symbol::Star; n];
        let mut rest = index;
        for slot in symbols.iter_mut().rev() {
            let digit = (rest % base) as u8;
            rest /= base;
            *slot = if digit == m { Symbol::Star } else { Symbol::Letter(digit + 1) };
        }
        LineTemplate::new(symbols, m)
    }
}

impl fmt::Display for LineTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &sym in &self.symbols {
            match sym {
                Symbol::Letter(letter) => write!(f, "{letter}")?,
                Symbol::Star => f.write_str("*")?,
            }
        }
        Ok(())
    }
}

/// w with every position in `positions` overwritten by `letter`.
pub fn substitute(w: &Word, positions: &[usize], letter: u8) -> Result<Word> {
    if letter == 0 || letter > w.m() {
        return Err(Error::LetterOutOfRange { letter, m: w.m() });
    }
    let mut letters = w.letters().to_vec();
    for &pos in positions {
        if pos >= letters.len() {
            return Err(Error::PositionOutOfRange { pos, n: letters.len() });
        }
        letters[pos] = letter;
    }
    Word::new(letters, w.m())
}

/// The minimal decomposition of a position set into disjoint, sorted,
/// pairwise non-adjacent intervals (= its maximal runs).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntervalDecomposition {
    intervals: Vec<(usize, usize)>,
}

impl IntervalDecomposition {
    /// Builds the decomposition of a position set (order and duplicates in
    /// the input are irrelevant). Empty input gives q = 0.
    pub fn from_positions(positions: &[usize]) -> Self {
        let mut sorted = positions.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut intervals: Vec<(usize, usize)> = Vec::new();
        for pos in sorted {
            match intervals.last_mut() {
                Some((_, end)) if *end + 1 == pos => *end = pos,
                _ => intervals.push((pos, pos)),
            }
        }
        IntervalDecomposition { intervals }
    }

    /// Inclusive interval bounds, sorted and pairwise non-adjacent.
    pub fn intervals(&self) -> &[(usize, usize)] {
        &self.intervals
    }

    pub fn q(&self) -> usize {
        self.intervals.len()
    }
}

/// Minimal number of intervals covering the position set (0 for empty).
pub fn interval_count(positions: &[usize]) -> usize {
    IntervalDecomposition::from_positions(positions).q()
}

/// Size of the full index range [0, (m+1)^n) the enumeration walks.
pub fn index_space(m: u8, n: usize) -> Result<u64> {
    checked_pow(m as u64 + 1, n)
}

/// Number of line templates in [m]^n: (m+1)^n - m^n.
pub fn template_count(m: u8, n: usize) -> Result<u64> {
    Ok(index_space(m, n)? - checked_pow(m as u64, n)?)
}

/// Odometer over the digit strings of [lo, hi) in base (m+1), skipping
/// star-free indices. Digit d < m is letter d+1, digit m is the star.
pub(crate) struct RawTemplates {
    m: u8,
    n: usize,
    next: u64,
    end: u64,
    digits: Vec<u8>,
    stars: usize,
    primed: bool,
}

impl RawTemplates {
    pub(crate) fn new(m: u8, n: usize, lo: u64, hi: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidAlphabet { m });
        }
        let space = index_space(m, n)?;
        if hi > space || lo > hi {
            return Err(Error::IndexOutOfRange { index: hi.max(lo), space });
        }
        let base = m as u64 + 1;
        let mut digits = vec![0u8; n];
        let mut rest = lo;
        let mut stars = 0usize;
        for slot in digits.iter_mut().rev() {
            *slot = (rest % base) as u8;
            rest /= base;
            if *slot == m {
                stars += 1;
            }
        }
        Ok(RawTemplates { m, n, next: lo, end: hi, digits, stars, primed: false })
    }

    fn step(&mut self) {
        self.next += 1;
        for pos in (0..self.n).rev() {
            if self.digits[pos] == self.m {
                self.digits[pos] = 0;
                self.stars -= 1;
            } else {
                self.digits[pos] += 1;
                if self.digits[pos] == self.m {
                    self.stars += 1;
                }
                return;
            }
        }
    }

    /// Index of the next template; `digits()` then holds its symbols.
    pub(crate) fn advance(&mut self) -> Option<u64> {
        if self.primed {
            self.step();
        } else {
            self.primed = true;
        }
        while self.next < self.end {
            if self.stars > 0 {
                return Some(self.next);
            }
            self.step();
        }
        None
    }

    pub(crate) fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub(crate) fn star_digit(&self) -> u8 {
        self.m
    }
}

/// Iterator over every template of [m]^n in canonical order.
pub struct Templates {
    raw: RawTemplates,
}

impl Templates {
    fn make(m: u8, n: usize, lo: u64, hi: u64) -> Result<Templates> {
        Ok(Templates { raw: RawTemplates::new(m, n, lo, hi)? })
    }
}

impl Iterator for Templates {
    type Item = LineTemplate;

    fn next(&mut self) -> Option<LineTemplate> {
        self.raw.advance()?;
        let star = self.raw.star_digit();
        let symbols = self
            .raw
            .digits()
            .iter()
            .map(|&d| if d == star { Symbol::Star } else { Symbol::Letter(d + 1) })
            .collect();
        Some(LineTemplate { symbols, m: self.raw.m })
    }
}

/// Every template of [m]^n exactly once, in canonical order.
pub fn templates(m: u8, n: usize) -> Result<Templates> {
    let space = index_space(m, n)?;
    Templates::make(m, n, 0, space)
}

/// The templates whose canonical indices fall in [lo, hi); contiguous
/// chunks of the full range partition the enumeration for parallel scans.
pub fn templates_in(m: u8, n: usize, lo: u64, hi: u64) -> Result<Templates> {
    Templates::make(m, n, lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tpl(text: &str, m: u8) -> LineTemplate {
        LineTemplate::from_text(text, m).unwrap()
    }

    fn word(text: &str, m: u8) -> Word {
        Word::from_text(text, m).unwrap()
    }

    /// Independent oracle: all strings over {1..m, ★} of length n via
    /// recursive product, keeping those with a star.
    fn all_templates_oracle(m: u8, n: usize) -> Vec<LineTemplate> {
        let mut alphabet: Vec<Symbol> = (1..=m).map(Symbol::Letter).collect();
        alphabet.push(Symbol::Star);
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        fn rec(
            alphabet: &[Symbol],
            n: usize,
            m: u8,
            current: &mut Vec<Symbol>,
            out: &mut Vec<LineTemplate>,
        ) {
            if current.len() == n {
                if current.contains(&Symbol::Star) {
                    out.push(LineTemplate::new(current.clone(), m).unwrap());
                }
                return;
            }
            for &sym in alphabet {
                current.push(sym);
                rec(alphabet, n, m, current, out);
                current.pop();
            }
        }
        rec(&alphabet, n, m, &mut current, &mut out);
        out
    }

    #[test]
    fn substitute_examples() {
        assert_eq!(substitute(&word("111", 3), &[1], 2).unwrap(), word("121", 3));
        assert_eq!(
            substitute(&word("11122133", 3), &[], 3).unwrap(),
            word("11122133", 3)
        );
        assert_eq!(
            substitute(&word("1313", 3), &[0, 1, 2, 3], 2).unwrap(),
            word("2222", 3)
        );
        assert!(substitute(&word("111", 3), &[3], 2).is_err());
        assert!(substitute(&word("111", 3), &[0], 4).is_err());
    }

    #[test]
    fn line_points_examples() {
        assert_eq!(
            tpl("*1*", 3).line_points(),
            vec![word("111", 3), word("212", 3), word("313", 3)]
        );
        assert_eq!(tpl("1*", 2).line_points(), vec![word("11", 2), word("12", 2)]);
        assert_eq!(
            tpl("**", 3).line_points(),
            vec![word("11", 3), word("22", 3), word("33", 3)]
        );
    }

    #[test]
    fn interval_count_examples() {
        // 1-based {2,3,4} in [8] is 0-based {1,2,3}.
        assert_eq!(interval_count(&[1, 2, 3]), 1);
        // 1-based {1,2,5,6,8}: runs {1,2},{5,6},{8}.
        assert_eq!(interval_count(&[0, 1, 4, 5, 7]), 3);
        assert_eq!(interval_count(&[]), 0);
    }

    #[test]
    fn decomposition_structure() {
        let d = IntervalDecomposition::from_positions(&[7, 0, 1, 5, 4]);
        assert_eq!(d.intervals(), &[(0, 1), (4, 5), (7, 7)]);
        assert_eq!(d.q(), 3);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(templates(2, 2).unwrap().count(), 5);
        let only: Vec<_> = templates(3, 1).unwrap().collect();
        assert_eq!(only, vec![tpl("*", 3)]);
        assert_eq!(templates(3, 4).unwrap().count(), 175);
        assert_eq!(template_count(3, 4).unwrap(), 175);
    }

    #[test]
    fn enumeration_matches_oracle() {
        for m in 1..=3u8 {
            for n in 1..=5usize {
                let got: Vec<_> = templates(m, n).unwrap().collect();
                let want = all_templates_oracle(m, n);
                assert_eq!(got, want, "m={m} n={n}");
                assert_eq!(got.len() as u64, template_count(m, n).unwrap());
                for t in &got {
                    assert!(!t.wildcard_set().is_empty());
                }
            }
        }
    }

    #[test]
    fn enumeration_nonempty_wildcards_exhaustive() {
        for m in 1..=3u8 {
            for n in 1..=6usize {
                let mut seen = 0u64;
                for t in templates(m, n).unwrap() {
                    assert!(!t.wildcard_set().is_empty());
                    seen += 1;
                }
                assert_eq!(seen, template_count(m, n).unwrap());
            }
        }
    }

    #[test]
    fn chunked_enumeration_matches_sequential() {
        let m = 3;
        let n = 4;
        let space = index_space(m, n).unwrap();
        let sequential: Vec<_> = templates(m, n).unwrap().collect();
        for cuts in [vec![0, space], vec![0, 1, space], vec![0, 97, 101, 200, space]] {
            let mut chunked = Vec::new();
            for pair in cuts.windows(2) {
                chunked.extend(templates_in(m, n, pair[0], pair[1]).unwrap());
            }
            assert_eq!(chunked, sequential);
        }
    }

    #[test]
    fn canonical_index_roundtrip() {
        for t in templates(3, 4).unwrap() {
            let idx = t.canonical_index().unwrap();
            assert_eq!(LineTemplate::from_canonical_index(idx, 3, 4).unwrap(), t);
        }
        // Index 0 of [3]^2 is the star-free word 11.
        assert!(LineTemplate::from_canonical_index(0, 3, 2).is_err());
    }

    #[test]
    fn template_text_and_validation() {
        assert_eq!(tpl("2**3*1", 3).to_string(), "2**3*1");
        assert_eq!(tpl("2**3*1", 3).wildcard_set(), vec![1, 2, 4]);
        assert!(LineTemplate::from_text("123", 3).is_err());
        assert!(LineTemplate::from_text("*4", 3).is_err());
        assert!(LineTemplate::from_text("*x", 3).is_err());
    }

    #[test]
    fn points_distinct_and_agree_off_s() {
        for t in templates(3, 4).unwrap() {
            let points = t.line_points();
            let s = t.wildcard_set();
            for (a, xa) in points.iter().enumerate() {
                for xb in points.iter().skip(a + 1) {
                    assert_ne!(xa, xb);
                }
                for (j, &letter) in xa.letters().iter().enumerate() {
                    if s.contains(&j) {
                        assert_eq!(letter, a as u8 + 1);
                    } else {
                        assert_eq!(
                            Symbol::Letter(letter),
                            t.symbols()[j],
                            "points must agree with the template off S"
                        );
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn chunked_enumeration_any_partition(
            cuts in proptest::collection::btree_set(0..=256u64, 0..6)
        ) {
            let (m, n) = (3u8, 4usize);
            let space = index_space(m, n).unwrap();
            let mut bounds: Vec<u64> = std::iter::once(0)
                .chain(cuts.into_iter())
                .chain(std::iter::once(space))
                .collect();
            bounds.sort_unstable();
            let sequential: Vec<_> = templates(m, n).unwrap().collect();
            let mut chunked = Vec::new();
            for pair in bounds.windows(2) {
                chunked.extend(templates_in(m, n, pair[0], pair[1]).unwrap());
            }
            prop_assert_eq!(chunked, sequential);
        }

        #[test]
        fn interval_count_packing_bound(
            n in 1..40usize,
            mask in proptest::collection::vec(proptest::bool::ANY, 1..40)
        ) {
            let positions: Vec<usize> = mask.iter().take(n).enumerate()
                .filter_map(|(j, &b)| b.then_some(j))
                .collect();
            prop_assert!(interval_count(&positions) <= n.div_ceil(2));
        }

        #[test]
        fn decomposition_invariants(
            positions in proptest::collection::btree_set(0..64usize, 0..32)
        ) {
            let positions: Vec<usize> = positions.into_iter().collect();
            let d = IntervalDecomposition::from_positions(&positions);
            let mut union = Vec::new();
            for window in d.intervals().windows(2) {
                let (_, b_prev) = window[0];
                let (a_next, _) = window[1];
                prop_assert!(b_prev + 1 < a_next, "intervals must be non-adjacent");
            }
            for &(a, b) in d.intervals() {
                prop_assert!(a <= b);
                union.extend(a..=b);
            }
            prop_assert_eq!(union, positions);
        }
    }

    #[test]
    fn alternating_positions_meet_packing_bound() {
        for n in 1..=20usize {
            let positions: Vec<usize> = (0..n).step_by(2).collect();
            assert_eq!(interval_count(&positions), n.div_ceil(2));
        }
    }
}
