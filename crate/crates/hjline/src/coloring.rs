//! Colorings of [m]^n over Z_r: letter-weight sums, the contraction-based
//! chain behind the `tplus` coloring, and table/random specs for experiments.

use std::fmt;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::words::Word;

/// Letter weights t in Z_r^m. Entries are reduced into [0, r).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightVector {
    r: u32,
    t: Vec<u32>,
}

impl WeightVector {
    /// Builds a weight vector mod r >= 2; entries may be negative and are
    /// reduced into [0, r).
    pub fn new(r: u32, weights: &[i64]) -> Result<Self> {
        if r < 2 {
            return Err(Error::NotOddModulus { r });
        }
        if weights.is_empty() || weights.len() > u8::MAX as usize {
            return Err(Error::WeightCount { expected: 1, found: weights.len() });
        }
        let r64 = r as i64;
        let t = weights
            .iter()
            .map(|&w| (w.rem_euclid(r64)) as u32)
            .collect();
        Ok(WeightVector { r, t })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn m(&self) -> u8 {
        self.t.len() as u8
    }

    pub fn weights(&self) -> &[u32] {
        &self.t
    }

    pub fn weight_of(&self, letter: u8) -> Result<u32> {
        if letter == 0 || letter as usize > self.t.len() {
            return Err(Error::LetterOutOfRange { letter, m: self.m() });
        }
        Ok(self.t[letter as usize - 1])
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (j, w) in self.t.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "]")
    }
}

/// The weights t = (2, -1, 2) over Z_r for odd r >= 3; the vector for which
/// the interval lower bound closes.
pub fn canonical_weights(r: u32) -> Result<WeightVector> {
    if r < 3 || r.is_multiple_of(2) {
        return Err(Error::NotOddModulus { r });
    }
    WeightVector::new(r, &[2, -1, 2])
}

/// Sum of the letter weights of w, mod r. Empty word sums to 0.
pub fn weight_sum(w: &Word, wv: &WeightVector) -> Result<u32> {
    let mut acc: u64 = 0;
    for &letter in w.letters() {
        acc += wv.weight_of(letter)? as u64;
        if acc >= u64::from(u32::MAX) {
            acc %= wv.r as u64;
        }
    }
    Ok((acc % wv.r as u64) as u32)
}

/// Weight sum of the contraction of w.
pub fn contraction_weight(w: &Word, wv: &WeightVector) -> Result<u32> {
    weight_sum(&w.contract(), wv)
}

/// The coloring value: weight sum of the contraction of 1 w 1, computed by
/// the definition chain. See [`tplus_color_streaming`] for the one-pass form.
pub fn tplus_color(w: &Word, wv: &WeightVector) -> Result<u32> {
    contraction_weight(&w.plus_extend(), wv)
}

/// One-pass evaluation of the coloring: a leading and trailing virtual 1,
/// skipping letters equal to their predecessor. No intermediate words are
/// built; equals [`tplus_color`] on every input.
pub fn tplus_color_streaming<I>(letters: I, wv: &WeightVector) -> Result<u32>
where
    I: IntoIterator<Item = u8>,
{
    let mut prev = 1u8;
    let mut acc = wv.weight_of(1)? as u64;
    for letter in letters {
        if letter != prev {
            acc += wv.weight_of(letter)? as u64;
            prev = letter;
            if acc >= u64::from(u32::MAX) {
                acc %= wv.r as u64;
            }
        }
    }
    if prev != 1 {
        acc += wv.t[0] as u64;
    }
    Ok((acc % wv.r as u64) as u32)
}

/// The weight-sum term sequence of w, e.g. "t1+t2+t1+t3+t1" for 12131.
/// The empty word renders as "0".
pub fn weight_symbols(w: &Word) -> String {
    if w.is_empty() {
        return "0".to_owned();
    }
    let terms: Vec<String> = w.letters().iter().map(|&l| format!("t{l}")).collect();
    terms.join("+")
}

fn hash_color(seed: u64, index: u64, r: u32) -> u32 {
    // splitmix64 finalizer over (seed, index); stable across platforms.
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    (z % r as u64) as u32
}

pub(crate) fn random_color(seed: u64, index: u64, r: u32) -> u32 {
    hash_color(seed, index, r)
}

#[derive(Clone, Debug)]
pub(crate) enum SpecKind {
    TPlus { n: usize, weights: WeightVector },
    Table { m: u8, n: usize, r: u32, colors: Vec<u32>, source: Option<String> },
    Random { m: u8, n: usize, r: u32, seed: u64 },
}

/// A named, total, deterministic coloring of [m]^n with colors in [0, r).
#[derive(Clone, Debug)]
pub struct ColoringSpec {
    kind: SpecKind,
}

impl ColoringSpec {
    /// The weight-chain coloring of [3]^n (or [m]^n for an m-entry vector).
    pub fn tplus(n: usize, weights: WeightVector) -> Self {
        ColoringSpec { kind: SpecKind::TPlus { n, weights } }
    }

    /// A fully materialized coloring table in canonical word order.
    pub fn table(m: u8, n: usize, r: u32, colors: Vec<u32>) -> Result<Self> {
        Self::table_from(m, n, r, colors, None)
    }

    fn table_from(m: u8, n: usize, r: u32, colors: Vec<u32>, source: Option<String>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidAlphabet { m });
        }
        let expected = crate::words::checked_pow(m as u64, n)?;
        if colors.len() as u64 != expected {
            return Err(Error::ColoringFile(format!(
                "expected {expected} colors for m={m} n={n}, found {}",
                colors.len()
            )));
        }
        if let Some(&bad) = colors.iter().find(|&&c| c >= r) {
            return Err(Error::ColorOutOfRange { color: bad, r });
        }
        Ok(ColoringSpec { kind: SpecKind::Table { m, n, r, colors, source } })
    }

    /// A seeded pseudorandom coloring; the color of a word depends only on
    /// (seed, word).
    pub fn random(m: u8, n: usize, r: u32, seed: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidAlphabet { m });
        }
        if r < 1 {
            return Err(Error::ColorOutOfRange { color: 0, r });
        }
        Ok(ColoringSpec { kind: SpecKind::Random { m, n, r, seed } })
    }

    pub fn m(&self) -> u8 {
        match &self.kind {
            SpecKind::TPlus { weights, .. } => weights.m(),
            SpecKind::Table { m, .. } | SpecKind::Random { m, .. } => *m,
        }
    }

    pub fn n(&self) -> usize {
        match &self.kind {
            SpecKind::TPlus { n, .. } => *n,
            SpecKind::Table { n, .. } | SpecKind::Random { n, .. } => *n,
        }
    }

    pub fn r(&self) -> u32 {
        match &self.kind {
            SpecKind::TPlus { weights, .. } => weights.r(),
            SpecKind::Table { r, .. } | SpecKind::Random { r, .. } => *r,
        }
    }

    pub(crate) fn kind(&self) -> &SpecKind {
        &self.kind
    }

    fn check_dims(&self, w: &Word) -> Result<()> {
        if w.m() != self.m() {
            return Err(Error::AlphabetMismatch { expected: self.m(), found: w.m() });
        }
        if w.len() != self.n() {
            return Err(Error::LengthMismatch { expected: self.n(), found: w.len() });
        }
        Ok(())
    }

    /// The color of w under this spec.
    pub fn color(&self, w: &Word) -> Result<u32> {
        self.check_dims(w)?;
        match &self.kind {
            SpecKind::TPlus { weights, .. } => {
                tplus_color_streaming(w.letters().iter().copied(), weights)
            }
            SpecKind::Table { colors, .. } => Ok(colors[w.index()? as usize]),
            SpecKind::Random { r, seed, .. } => Ok(random_color(*seed, w.index()?, *r)),
        }
    }
}

impl fmt::Display for ColoringSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SpecKind::TPlus { n, weights } => {
                write!(f, "tplus(m={},n={n},r={},t={weights})", weights.m(), weights.r())
            }
            SpecKind::Table { m, n, r, source, .. } => match source {
                Some(path) => write!(f, "file({path},m={m},n={n},r={r})"),
                None => write!(f, "table(m={m},n={n},r={r})"),
            },
            SpecKind::Random { m, n, r, seed } => {
                write!(f, "random(m={m},n={n},r={r},seed={seed})")
            }
        }
    }
}

/// The coloring that witnesses the even-r bound: for even r >= 4, run the
/// odd chain at modulus r-1 and view its colors inside [0, r) with one
/// color unused. Its monochromatic lines need at least r-1 intervals.
pub fn even_r_coloring(r: u32, n: usize) -> Result<ColoringSpec> {
    if r < 4 || !r.is_multiple_of(2) {
        return Err(Error::NotEvenModulus { r });
    }
    Ok(ColoringSpec::tplus(n, canonical_weights(r - 1)?))
}

/// Parses the ASCII coloring-table format:
/// line 1 `hjcolor 1 m=<m> n=<n> r=<r>`, then m^n colors in canonical
/// word order. Wrong counts and out-of-range colors are rejected.
pub fn parse_coloring(text: &str) -> Result<ColoringSpec> {
    let mut tokens = text.split_whitespace();
    let magic = tokens.next().unwrap_or("");
    if magic != "hjcolor" {
        return Err(Error::ColoringFile(format!("bad magic {magic:?}")));
    }
    let version = tokens.next().unwrap_or("");
    if version != "1" {
        return Err(Error::ColoringFile(format!("unsupported version {version:?}")));
    }
    fn keyed(tokens: &mut dyn Iterator<Item = &str>, key: &str) -> Result<u64> {
        let token = tokens
            .next()
            .ok_or_else(|| Error::ColoringFile(format!("missing {key}= field")))?;
        let value = token
            .strip_prefix(key)
            .and_then(|rest| rest.strip_prefix('='))
            .ok_or_else(|| Error::ColoringFile(format!("expected {key}=<int>, found {token:?}")))?;
        value
            .parse::<u64>()
            .map_err(|_| Error::ColoringFile(format!("bad {key} value {value:?}")))
    }
    let m = keyed(&mut tokens, "m")?;
    let n = keyed(&mut tokens, "n")?;
    let r = keyed(&mut tokens, "r")?;
    if m == 0 || m > u8::MAX as u64 {
        return Err(Error::ColoringFile(format!("bad alphabet size m={m}")));
    }
    if r == 0 || r > u32::MAX as u64 {
        return Err(Error::ColoringFile(format!("bad modulus r={r}")));
    }
    let mut colors = Vec::new();
    for token in tokens {
        let color = token
            .parse::<u32>()
            .map_err(|_| Error::ColoringFile(format!("bad color {token:?}")))?;
        colors.push(color);
    }
    ColoringSpec::table_from(m as u8, n as usize, r as u32, colors, None)
}

pub fn read_coloring_file(path: &Path) -> Result<ColoringSpec> {
    let text = fs::read_to_string(path)?;
    let spec = parse_coloring(&text)?;
    match spec.kind {
        SpecKind::Table { m, n, r, colors, .. } => {
            ColoringSpec::table_from(m, n, r, colors, Some(path.display().to_string()))
        }
        _ => unreachable!("parse_coloring always yields a table"),
    }
}

/// Materializes any spec as a coloring file in canonical word order.
pub fn write_coloring_file(spec: &ColoringSpec, path: &Path) -> Result<()> {
    let m = spec.m();
    let n = spec.n();
    let total = crate::words::checked_pow(m as u64, n)?;
    let mut out = format!("hjcolor 1 m={m} n={n} r={}\n", spec.r());
    for index in 0..total {
        let w = Word::from_index(index, m, n)?;
        out.push_str(&spec.color(&w)?.to_string());
        if (index + 1) % 20 == 0 || index + 1 == total {
            out.push('\n');
        } else {
            out.push(' ');
        }
    }
    fs::write(path, out)?;
    Ok(())
}
