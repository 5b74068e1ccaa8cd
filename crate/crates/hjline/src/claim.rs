//! The boundary-pair algebra of the [3]^n coloring: splitting x_i off its
//! wildcard intervals, the h correction function, and the color-difference
//! identities that force the interval lower bound.

use crate::coloring::{contraction_weight, tplus_color, WeightVector};
use crate::error::{Error, Result};
use crate::lines::{IntervalDecomposition, LineTemplate};
use crate::words::Word;

/// Column order of the h table as conventionally printed.
pub const H_PAIR_COLUMNS: [(u8, u8); 6] = [(1, 1), (2, 2), (3, 3), (2, 3), (3, 1), (1, 2)];

/// How x_1's plus-extension splits around the wildcard intervals: the q+1
/// non-empty subwords between/around the q intervals, and for each interval
/// the letters immediately flanking it.
#[derive(Clone, Debug)]
pub struct BoundaryDecomposition {
    subwords: Vec<Word>,
    boundary_pairs: Vec<(u8, u8)>,
    intervals: Vec<(usize, usize)>,
}

impl BoundaryDecomposition {
    /// The q+1 subwords w_0, .., w_q; all non-empty.
    pub fn subwords(&self) -> &[Word] {
        &self.subwords
    }

    /// For interval j, (last letter of w_{j-1}, first letter of w_j).
    pub fn boundary_pairs(&self) -> &[(u8, u8)] {
        &self.boundary_pairs
    }

    /// Wildcard intervals in plus-extension coordinates (0-based inclusive,
    /// shifted by the leading inserted 1).
    pub fn intervals(&self) -> &[(usize, usize)] {
        &self.intervals
    }

    pub fn q(&self) -> usize {
        self.intervals.len()
    }

    /// Interleaves subwords and 1-filled intervals back into x_1's
    /// plus-extension; the defining identity of the decomposition.
    pub fn reconstruct_plus(&self) -> Word {
        let mut letters = self.subwords[0].letters().to_vec();
        for (j, &(a, b)) in self.intervals.iter().enumerate() {
            letters.extend(std::iter::repeat_n(1u8, b - a + 1));
            letters.extend_from_slice(self.subwords[j + 1].letters());
        }
        Word::new(letters, 3).expect("subwords are over [3]")
    }
}

/// Splits the representative x_1 of a [3]^n line around its wildcard
/// intervals inside the plus-extension.
pub fn decompose(tpl: &LineTemplate) -> Result<BoundaryDecomposition> {
    if tpl.m() != 3 {
        return Err(Error::AlphabetMismatch { expected: 3, found: tpl.m() });
    }
    let base = tpl.point(1)?;
    let plus = base.plus_extend();
    let letters = plus.letters();
    let intervals: Vec<(usize, usize)> =
        IntervalDecomposition::from_positions(&tpl.wildcard_set())
            .intervals()
            .iter()
            .map(|&(a, b)| (a + 1, b + 1))
            .collect();
    let mut subwords = Vec::with_capacity(intervals.len() + 1);
    let mut start = 0usize;
    for &(a, b) in &intervals {
        subwords.push(Word::new(letters[start..a].to_vec(), 3)?);
        start = b + 1;
    }
    subwords.push(Word::new(letters[start..].to_vec(), 3)?);
    debug_assert!(subwords.iter().all(|sub| !sub.is_empty()));
    let boundary_pairs = (1..subwords.len())
        .map(|j| {
            (
                *subwords[j - 1].letters().last().unwrap(),
                subwords[j].letters()[0],
            )
        })
        .collect();
    let out = BoundaryDecomposition { subwords, boundary_pairs, intervals };
    debug_assert_eq!(out.reconstruct_plus(), plus);
    Ok(out)
}

/// Coefficient of t_i in h_i(l, f): -1, 0, or +1.
pub fn h_coefficient(i: u8, l: u8, f: u8) -> Result<i8> {
    for letter in [i, l, f] {
        if letter == 0 || letter > 3 {
            return Err(Error::LetterOutOfRange { letter, m: 3 });
        }
    }
    Ok(if l == f {
        if i == l {
            -1
        } else {
            1
        }
    } else if i == l || i == f {
        0
    } else {
        1
    })
}

/// The correction term h_i(l, f): how the contraction weight of
/// u i..i v differs from the weights of u and v alone. Symmetric in (l, f).
pub fn h(i: u8, l: u8, f: u8, wv: &WeightVector) -> Result<u32> {
    let coefficient = h_coefficient(i, l, f)?;
    let t_i = wv.weight_of(i)?;
    let r = wv.r();
    Ok(match coefficient {
        0 => 0,
        1 => t_i,
        _ => (r - t_i) % r,
    })
}

/// The color of x_i computed from the decomposition of x_1: the subword
/// weights plus one h correction per wildcard interval. Always equals the
/// direct evaluation of the coloring on x_i.
pub fn claim_eval(tpl: &LineTemplate, i: u8, wv: &WeightVector) -> Result<u32> {
    let d = decompose(tpl)?;
    let r = wv.r() as u64;
    let mut acc: u64 = 0;
    for sub in d.subwords() {
        acc += contraction_weight(sub, wv)? as u64;
    }
    for &(l, f) in d.boundary_pairs() {
        acc += h(i, l, f, wv)? as u64;
    }
    Ok((acc % r) as u32)
}

/// h_1(l, f) + h_3(l, f) - 2 h_2(l, f) mod r; equals 2 for every pair under
/// the canonical weights.
pub fn pair_delta(l: u8, f: u8, wv: &WeightVector) -> Result<u32> {
    let r = wv.r() as u64;
    let h1 = h(1, l, f, wv)? as u64;
    let h2 = h(2, l, f, wv)? as u64;
    let h3 = h(3, l, f, wv)? as u64;
    Ok(((h1 + h3 + 2 * (r - h2)) % r) as u32)
}

/// The signed color combination of a line's three points:
/// color(x_1) + color(x_3) - 2 color(x_2) mod r. Under canonical weights
/// this equals 2q where q is the line's interval count.
pub fn line_color_delta(tpl: &LineTemplate, wv: &WeightVector) -> Result<u32> {
    let r = wv.r() as u64;
    let c1 = tplus_color(&tpl.point(1)?, wv)? as u64;
    let c2 = tplus_color(&tpl.point(2)?, wv)? as u64;
    let c3 = tplus_color(&tpl.point(3)?, wv)? as u64;
    Ok(((c1 + c3 + 2 * (r - c2)) % r) as u32)
}
