//! Exhaustive line scans over a coloring, the interval-bound verifier, the
//! two-letter pigeonhole finder, and a brute-force oracle for tiny
//! instances. Scans chunk the template index range across workers and merge
//! partial reports with an order-independent fold.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use crate::coloring::{
    canonical_weights, even_r_coloring, random_color, tplus_color_streaming, ColoringSpec,
    SpecKind,
};
use crate::error::{Error, Result};
use crate::lines::{self, LineTemplate, RawTemplates, Symbol};
use crate::words::checked_pow;

/// Default cap on the index range (m+1)^n a scan will walk.
pub const DEFAULT_BUDGET: u64 = 1 << 32;

#[derive(Clone, Debug)]
pub struct ScanOptions {
    /// Worker threads; `None` uses the available parallelism.
    pub workers: Option<usize>,
    /// Refuse scans whose index range exceeds this many indices.
    pub budget: u64,
    /// Also track the first monochromatic line (by canonical index) whose
    /// interval count is not a multiple of this divisor.
    pub flag_q_not_multiple_of: Option<u32>,
    /// Use the generic odometer even where the packed kernel applies.
    pub force_general: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            workers: None,
            budget: DEFAULT_BUDGET,
            flag_q_not_multiple_of: None,
            force_general: false,
        }
    }
}

/// Outcome of an exhaustive line scan.
#[derive(Clone, Debug)]
pub struct SearchReport {
    pub m: u8,
    pub n: usize,
    pub spec: String,
    pub templates_scanned: u64,
    pub monochromatic_count: u64,
    /// Minimum interval count among monochromatic lines.
    pub min_q: Option<u32>,
    /// The monochromatic line achieving min_q with the smallest canonical
    /// index.
    pub witness: Option<LineTemplate>,
    /// Count of monochromatic lines per interval count.
    pub q_histogram: BTreeMap<u32, u64>,
    /// First monochromatic line violating the configured q-divisor check.
    pub violation: Option<LineTemplate>,
    pub elapsed: Duration,
}

impl SearchReport {
    /// The stable JSON form of the report.
    pub fn to_json(&self) -> Value {
        let histogram: BTreeMap<String, u64> = self
            .q_histogram
            .iter()
            .map(|(&q, &count)| (q.to_string(), count))
            .collect();
        json!({
            "m": self.m,
            "n": self.n,
            "spec": self.spec,
            "templates_scanned": self.templates_scanned,
            "monochromatic_count": self.monochromatic_count,
            "min_q": self.min_q,
            "witness": self.witness.as_ref().map(|t| t.to_string()),
            "q_histogram": histogram,
            "elapsed_ms": self.elapsed.as_millis() as u64,
        })
    }
}

#[derive(Clone, Debug, Default)]
struct Partial {
    templates: u64,
    mono: u64,
    hist: BTreeMap<u32, u64>,
    /// Lexicographic minimum over (q, canonical index).
    best: Option<(u32, u64)>,
    /// Minimum canonical index among divisor violations.
    violation: Option<u64>,
}

impl Partial {
    #[inline]
    fn record_mono(&mut self, q: u32, index: u64, q_divisor: Option<u32>) {
        self.mono += 1;
        *self.hist.entry(q).or_insert(0) += 1;
        let candidate = (q, index);
        if self.best.is_none_or(|best| candidate < best) {
            self.best = Some(candidate);
        }
        if let Some(divisor) = q_divisor {
            if !q.is_multiple_of(divisor) && self.violation.is_none_or(|v| index < v) {
                self.violation = Some(index);
            }
        }
    }

    fn merge(&mut self, other: Partial) {
        self.templates += other.templates;
        self.mono += other.mono;
        for (q, count) in other.hist {
            *self.hist.entry(q).or_insert(0) += count;
        }
        self.best = match (self.best, other.best) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.violation = match (self.violation, other.violation) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |p| p.get())
}

fn split_range(space: u64, parts: u64) -> Vec<(u64, u64)> {
    let parts = parts.clamp(1, space.max(1));
    let chunk = space / parts;
    let remainder = space % parts;
    let mut ranges = Vec::with_capacity(parts as usize);
    let mut lo = 0u64;
    for k in 0..parts {
        let size = chunk + u64::from(k < remainder);
        ranges.push((lo, lo + size));
        lo += size;
    }
    ranges
}

/// Visits every line template of the spec's [m]^n once and classifies the
/// monochromatic ones. The report is identical for any worker count.
pub fn scan(spec: &ColoringSpec, options: &ScanOptions) -> Result<SearchReport> {
    let start = Instant::now();
    let m = spec.m();
    let n = spec.n();
    let space = lines::index_space(m, n)?;
    if space > options.budget {
        return Err(Error::BudgetExceeded { required: space as u128, budget: options.budget });
    }
    let workers = options.workers.unwrap_or_else(default_workers).max(1) as u64;
    let ranges = split_range(space, workers);

    let partials: Vec<Result<Partial>> = if ranges.len() == 1 {
        vec![scan_chunk(spec, 0, space, options)]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = ranges
                .iter()
                .map(|&(lo, hi)| scope.spawn(move || scan_chunk(spec, lo, hi, options)))
                .collect();
            handles
                .into_iter()
                .map(|handle| handle.join().expect("scan worker panicked"))
                .collect()
        })
    };

    let mut total = Partial::default();
    for partial in partials {
        total.merge(partial?);
    }
    assert_eq!(
        total.templates,
        lines::template_count(m, n)?,
        "scan must visit every template exactly once"
    );

    let witness = total
        .best
        .map(|(_, index)| LineTemplate::from_canonical_index(index, m, n))
        .transpose()?;
    let violation = total
        .violation
        .map(|index| LineTemplate::from_canonical_index(index, m, n))
        .transpose()?;

    // Independent recheck of everything the report singles out.
    if let Some(template) = &witness {
        let (q, _) = total.best.unwrap();
        recheck_monochromatic(spec, template)?;
        assert_eq!(
            lines::interval_count(&template.wildcard_set()) as u32,
            q,
            "witness interval count must match min_q"
        );
    }
    if let Some(template) = &violation {
        recheck_monochromatic(spec, template)?;
        let divisor = options.flag_q_not_multiple_of.expect("violation implies divisor");
        let q = lines::interval_count(&template.wildcard_set()) as u32;
        assert!(!q.is_multiple_of(divisor), "flagged line must violate the divisor check");
    }

    Ok(SearchReport {
        m,
        n,
        spec: spec.to_string(),
        templates_scanned: total.templates,
        monochromatic_count: total.mono,
        min_q: total.best.map(|(q, _)| q),
        witness,
        q_histogram: total.hist,
        violation,
        elapsed: start.elapsed(),
    })
}

fn recheck_monochromatic(spec: &ColoringSpec, template: &LineTemplate) -> Result<()> {
    let points = template.line_points();
    let first = spec.color(&points[0])?;
    for point in &points[1..] {
        assert_eq!(
            spec.color(point)?,
            first,
            "reported line {template} must be monochromatic"
        );
    }
    Ok(())
}

fn scan_chunk(spec: &ColoringSpec, lo: u64, hi: u64, options: &ScanOptions) -> Result<Partial> {
    match spec.kind() {
        SpecKind::TPlus { n, weights }
            if weights.m() == 3 && *n >= 1 && *n <= 30 && !options.force_general =>
        {
            packed_tplus_chunk(weights, *n, lo, hi, options.flag_q_not_multiple_of)
        }
        _ => general_chunk(spec, lo, hi, options.flag_q_not_multiple_of),
    }
}

/// Scan kernel for the [3]^n weight-chain coloring with n <= 30: template
/// indices in base 4 are exactly the 2-bit packed symbol strings, and the
/// three point colors stream in one pass over the packed bits.
fn packed_tplus_chunk(
    weights: &crate::coloring::WeightVector,
    n: usize,
    lo: u64,
    hi: u64,
    q_divisor: Option<u32>,
) -> Result<Partial> {
    let r = weights.r() as u64;
    let t = [
        weights.weight_of(1)? as u64,
        weights.weight_of(2)? as u64,
        weights.weight_of(3)? as u64,
    ];
    // Even bit of every 2-bit digit; digit 3 (the star) has both bits set.
    let star_mask = 0x5555_5555_5555_5555u64 & ((1u64 << (2 * n)) - 1);
    let mut partial = Partial::default();

    for index in lo..hi {
        if index & (index >> 1) & star_mask == 0 {
            continue;
        }
        partial.templates += 1;
        let mut prev = [1u8; 3];
        let mut acc = [t[0]; 3];
        let mut q = 0u32;
        let mut prev_star = false;
        let mut shift = 2 * n;
        for _ in 0..n {
            shift -= 2;
            let code = ((index >> shift) & 3) as u8;
            if code == 3 {
                if !prev_star {
                    q += 1;
                }
                prev_star = true;
                for i in 0..3usize {
                    let letter = i as u8 + 1;
                    if prev[i] != letter {
                        acc[i] += t[i];
                        prev[i] = letter;
                    }
                }
            } else {
                prev_star = false;
                let letter = code + 1;
                let weight = t[code as usize];
                for i in 0..3usize {
                    if prev[i] != letter {
                        acc[i] += weight;
                        prev[i] = letter;
                    }
                }
            }
        }
        let c0 = (acc[0] + u64::from(prev[0] != 1) * t[0]) % r;
        let c1 = (acc[1] + u64::from(prev[1] != 1) * t[0]) % r;
        let c2 = (acc[2] + u64::from(prev[2] != 1) * t[0]) % r;
        if c0 == c1 && c1 == c2 {
            partial.record_mono(q, index, q_divisor);
        }
    }
    Ok(partial)
}

fn base_and_star_sum(digits: &[u8], star: u8, pow: &[u64]) -> (u64, u64) {
    let mut base = 0u64;
    let mut star_sum = 0u64;
    for (j, &digit) in digits.iter().enumerate() {
        if digit == star {
            star_sum += pow[j];
        } else {
            base += digit as u64 * pow[j];
        }
    }
    (base, star_sum)
}

fn general_chunk(
    spec: &ColoringSpec,
    lo: u64,
    hi: u64,
    q_divisor: Option<u32>,
) -> Result<Partial> {
    let m = spec.m();
    let n = spec.n();
    let mut raw = RawTemplates::new(m, n, lo, hi)?;
    let star = raw.star_digit();
    let mut partial = Partial::default();
    let mut colors = vec![0u32; m as usize];
    // Word-index weights per position, only needed for table/random lookups.
    let pow: Vec<u64> = if matches!(spec.kind(), SpecKind::TPlus { .. }) {
        Vec::new()
    } else {
        let mut pow = vec![1u64; n];
        for j in (0..n.saturating_sub(1)).rev() {
            pow[j] = pow[j + 1] * m as u64;
        }
        pow
    };

    while let Some(index) = raw.advance() {
        let digits = raw.digits();
        partial.templates += 1;
        let mut q = 0u32;
        let mut prev_star = false;
        for &digit in digits {
            let is_star = digit == star;
            if is_star && !prev_star {
                q += 1;
            }
            prev_star = is_star;
        }
        match spec.kind() {
            SpecKind::TPlus { weights, .. } => {
                for i in 1..=m {
                    colors[(i - 1) as usize] = tplus_color_streaming(
                        digits.iter().map(|&d| if d == star { i } else { d + 1 }),
                        weights,
                    )?;
                }
            }
            SpecKind::Table { colors: table, .. } => {
                let (base, star_sum) = base_and_star_sum(digits, star, &pow);
                for i in 0..m as u64 {
                    colors[i as usize] = table[(base + i * star_sum) as usize];
                }
            }
            SpecKind::Random { seed, r, .. } => {
                let (base, star_sum) = base_and_star_sum(digits, star, &pow);
                for i in 0..m as u64 {
                    colors[i as usize] = random_color(*seed, base + i * star_sum, *r);
                }
            }
        }
        let first = colors[0];
        if colors.iter().all(|&c| c == first) {
            partial.record_mono(q, index, q_divisor);
        }
    }
    Ok(partial)
}

/// Result of an interval-bound verification run.
#[derive(Clone, Debug)]
pub enum Verdict {
    Verified { report: SearchReport },
    Counterexample { template: LineTemplate, report: SearchReport },
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified { .. })
    }

    pub fn report(&self) -> &SearchReport {
        match self {
            Verdict::Verified { report } | Verdict::Counterexample { report, .. } => report,
        }
    }

    pub fn counterexample(&self) -> Option<&LineTemplate> {
        match self {
            Verdict::Verified { .. } => None,
            Verdict::Counterexample { template, .. } => Some(template),
        }
    }
}

/// Scans the canonical-weight coloring of [3]^n over odd r and checks that
/// every monochromatic line has interval count q >= r; since every line has
/// q >= 1, this is enforced through the stronger q = 0 (mod r) check, and
/// the first offending line in canonical order is the counterexample.
pub fn verify_theorem(r: u32, n: usize, options: &ScanOptions) -> Result<Verdict> {
    let weights = canonical_weights(r)?;
    let spec = ColoringSpec::tplus(n, weights);
    let mut options = options.clone();
    options.flag_q_not_multiple_of = Some(r);
    let report = scan(&spec, &options)?;
    Ok(match report.violation.clone() {
        None => Verdict::Verified { report },
        Some(template) => Verdict::Counterexample { template, report },
    })
}

/// The even-r companion: for even r >= 4 the modulus-(r-1) chain viewed as
/// an r-coloring admits no monochromatic line with fewer than r-1 intervals.
pub fn verify_even_remark(r: u32, n: usize, options: &ScanOptions) -> Result<Verdict> {
    let spec = even_r_coloring(r, n)?;
    let mut options = options.clone();
    options.flag_q_not_multiple_of = Some(r - 1);
    let report = scan(&spec, &options)?;
    Ok(match report.violation.clone() {
        None => Verdict::Verified { report },
        Some(template) => Verdict::Counterexample { template, report },
    })
}

/// Constructive two-letter finder. `colors[k]` is the color of the
/// threshold word 1^(n-k) 2^k for k = 0..=n. Scanning switch points
/// j = 1..n against all earlier switch points, the first repeated color
/// yields the line with base 1^i 2^(n-j) and stars on the single interval
/// between the switches. The result is monochromatic by construction.
pub fn pigeonhole_line(colors: &[u32]) -> Result<LineTemplate> {
    let n = match colors.len() {
        0 | 1 => return Err(Error::NoRepeatedColor { count: colors.len() }),
        len => len - 1,
    };
    let color_at_switch = |s: usize| colors[n - s];
    for j in 1..=n {
        for i in 0..j {
            if color_at_switch(i) == color_at_switch(j) {
                let mut symbols = Vec::with_capacity(n);
                symbols.extend(std::iter::repeat_n(Symbol::Letter(1), i));
                symbols.extend(std::iter::repeat_n(Symbol::Star, j - i));
                symbols.extend(std::iter::repeat_n(Symbol::Letter(2), n - j));
                return LineTemplate::new(symbols, 2);
            }
        }
    }
    Err(Error::NoRepeatedColor { count: colors.len() })
}

#[derive(Clone, Debug)]
pub struct OracleOptions {
    /// Refuse instances with more than this many words.
    pub max_cells: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { max_cells: 16 }
    }
}

/// Outcome of the brute-force coloring oracle.
#[derive(Clone, Debug)]
pub struct OracleOutcome {
    pub every_coloring_has_line: bool,
    /// A line-free coloring in canonical word order when the answer is no.
    pub witness: Option<Vec<u32>>,
}

struct OracleSearch {
    cells: usize,
    r: u32,
    lines_by_last: Vec<Vec<Vec<usize>>>,
    colors: Vec<u32>,
}

impl OracleSearch {
    /// Depth-first search for a line-free coloring, assigning cells in
    /// canonical word order and backtracking as soon as a completed line is
    /// monochromatic. Colors are introduced in ascending order, which only
    /// collapses color permutations.
    fn find_line_free(&mut self, cell: usize, used: u32) -> bool {
        if cell == self.cells {
            return true;
        }
        let limit = (used + 1).min(self.r);
        for color in 0..limit {
            self.colors[cell] = color;
            let completes_mono = self.lines_by_last[cell].iter().any(|points| {
                points.iter().all(|&p| self.colors[p] == color)
            });
            if !completes_mono && self.find_line_free(cell + 1, used.max(color + 1)) {
                return true;
            }
        }
        false
    }
}

/// Decides by exhaustive backtracking whether every r-coloring of [m]^n
/// contains a monochromatic combinatorial line.
pub fn decide_all_colorings(
    m: u8,
    n: usize,
    r: u32,
    options: &OracleOptions,
) -> Result<OracleOutcome> {
    if m == 0 {
        return Err(Error::InvalidAlphabet { m });
    }
    if r == 0 {
        return Err(Error::ColorOutOfRange { color: 0, r });
    }
    let cells = checked_pow(m as u64, n)?;
    if cells > options.max_cells {
        return Err(Error::BudgetExceeded { required: cells as u128, budget: options.max_cells });
    }
    let cells = cells as usize;
    let mut lines_by_last: Vec<Vec<Vec<usize>>> = vec![Vec::new(); cells];
    if n >= 1 {
        for template in lines::templates(m, n)? {
            let points: Vec<usize> = template
                .line_points()
                .iter()
                .map(|w| w.index().map(|i| i as usize))
                .collect::<Result<_>>()?;
            let last = *points.iter().max().expect("lines have at least one point");
            lines_by_last[last].push(points);
        }
    }
    let mut search = OracleSearch { cells, r, lines_by_last, colors: vec![0; cells] };
    if search.find_line_free(0, 0) {
        Ok(OracleOutcome { every_coloring_has_line: false, witness: Some(search.colors) })
    } else {
        Ok(OracleOutcome { every_coloring_has_line: true, witness: None })
    }
}

/// A found dimension together with its scan report.
#[derive(Clone, Debug)]
pub struct MinDimension {
    pub n: usize,
    pub report: SearchReport,
}

/// Smallest n <= n_max at which the canonical-weight coloring of [3]^n
/// admits any monochromatic line, with the scan report recording min_q.
pub fn min_n_with_mono_line(
    r: u32,
    n_max: usize,
    options: &ScanOptions,
) -> Result<Option<MinDimension>> {
    let weights = canonical_weights(r)?;
    for n in 1..=n_max {
        let spec = ColoringSpec::tplus(n, weights.clone());
        let report = scan(&spec, options)?;
        if report.monochromatic_count > 0 {
            return Ok(Some(MinDimension { n, report }));
        }
    }
    Ok(None)
}
