//! Volumes behind the knotting bound, Monte Carlo estimators and the bound report.
//!
//! For curl `+1` a trefoil needs its largest diagonal `dᵢ` and its angles in
//! a window of the torus. Within the third of the polytope where `d1` is
//! largest, the obtuse part (`d1² > d2² + d3²`) allows a window of
//! `1/192` of `[0, 2π]³` and the acute part a window of `1/48`. Weighting by
//! the volume ratios of the two parts and doubling for the two curl signs
//! gives the bound `(14 − 3π)/192`.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::action_angle::{build_hexagon, DiagonalTriple};
use crate::error::{Error, Result};
use crate::invariants::{classify, KnotClass};
use crate::predicates::{lemma_filters, predicate_class};
use crate::sampling::{run_chunked, sample_coords, RandomStream};

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VolumeTable {
    #[serde(rename = "vol_P6")]
    pub vol_p6: f64,
    pub vol_third: f64,
    pub vol_obtuse: f64,
    pub vol_acute: f64,
    pub ratio_obtuse: f64,
    pub ratio_acute: f64,
    pub torus_frac_obtuse: f64,
    pub torus_frac_acute: f64,
    /// Bound for one curl sign, `7/192 − π/128`.
    pub curl_plus_bound: f64,
    pub upper_bound: f64,
}

pub fn analytic_volumes() -> VolumeTable {
    let vol_third = 4.0 / 3.0;
    let vol_obtuse = 2.0 * (PI - 2.0) / 3.0;
    let ratio_obtuse = FRAC_PI_2 - 1.0;
    let ratio_acute = 2.0 - FRAC_PI_2;
    let torus_frac_obtuse = 1.0 / 192.0;
    let torus_frac_acute = 1.0 / 48.0;
    VolumeTable {
        vol_p6: 4.0,
        vol_third,
        vol_obtuse,
        vol_acute: (8.0 - 2.0 * PI) / 3.0,
        ratio_obtuse,
        ratio_acute,
        torus_frac_obtuse,
        torus_frac_acute,
        curl_plus_bound: ratio_obtuse * torus_frac_obtuse + ratio_acute * torus_frac_acute,
        upper_bound: (14.0 - 3.0 * PI) / 192.0,
    }
}

/// Regions whose volumes enter the bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionSpec {
    #[serde(rename = "P6")]
    P6,
    #[serde(rename = "third_d1_max")]
    ThirdD1Max,
    #[serde(rename = "obtuse_d1")]
    ObtuseD1,
    #[serde(rename = "acute_d1")]
    AcuteD1,
    #[serde(rename = "torus_obtuse_window")]
    TorusObtuseWindow,
    #[serde(rename = "torus_acute_window")]
    TorusAcuteWindow,
}

impl RegionSpec {
    pub const ALL: [RegionSpec; 6] = [
        RegionSpec::P6,
        RegionSpec::ThirdD1Max,
        RegionSpec::ObtuseD1,
        RegionSpec::AcuteD1,
        RegionSpec::TorusObtuseWindow,
        RegionSpec::TorusAcuteWindow,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::P6 => "P6",
            Self::ThirdD1Max => "third_d1_max",
            Self::ObtuseD1 => "obtuse_d1",
            Self::AcuteD1 => "acute_d1",
            Self::TorusObtuseWindow => "torus_obtuse_window",
            Self::TorusAcuteWindow => "torus_acute_window",
        }
    }

    fn is_torus(self) -> bool {
        matches!(self, Self::TorusObtuseWindow | Self::TorusAcuteWindow)
    }

    /// Volume of the sampling box: `[0, 2]³` or `[0, 2π]³`.
    pub fn reference_volume(self) -> f64 {
        if self.is_torus() {
            TAU.powi(3)
        } else {
            8.0
        }
    }

    pub fn analytic_volume(self) -> f64 {
        let t = analytic_volumes();
        let box_vol = self.reference_volume();
        match self {
            Self::P6 => t.vol_p6,
            Self::ThirdD1Max => t.vol_third,
            Self::ObtuseD1 => t.vol_obtuse,
            Self::AcuteD1 => t.vol_acute,
            Self::TorusObtuseWindow => t.torus_frac_obtuse * box_vol,
            Self::TorusAcuteWindow => t.torus_frac_acute * box_vol,
        }
    }

    /// Membership of a point of the sampling box (coordinates already scaled).
    pub fn contains(self, x: [f64; 3]) -> bool {
        let [a, b, c] = x;
        let in_p6 = || DiagonalTriple::new(a, b, c).is_interior();
        let third = || in_p6() && a > b && a > c;
        let acute = |t: f64| t > 0.0 && t < FRAC_PI_2;
        let sums = || a + b < PI && a + c < PI;
        match self {
            Self::P6 => in_p6(),
            Self::ThirdD1Max => third(),
            Self::ObtuseD1 => third() && a * a > b * b + c * c,
            Self::AcuteD1 => third() && a * a < b * b + c * c,
            Self::TorusObtuseWindow => a > FRAC_PI_2 && a < PI && acute(b) && acute(c) && sums(),
            Self::TorusAcuteWindow => a > 0.0 && a < PI && acute(b) && acute(c) && sums(),
        }
    }
}

impl fmt::Display for RegionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RegionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::UnknownRegion(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VolumeEstimate {
    pub region: RegionSpec,
    pub samples: u64,
    pub hits: u64,
    pub hit_fraction: f64,
    pub estimate: f64,
    pub std_error: f64,
    pub analytic: f64,
}

impl VolumeEstimate {
    /// `(estimate − analytic) / std_error`.
    pub fn z_score(&self) -> f64 {
        (self.estimate - self.analytic) / self.std_error
    }
}

/// Hit-or-miss estimate of a region's volume from `n` uniform points of its box.
pub fn mc_region_volume(region: RegionSpec, n: u64, seed: u64) -> Result<VolumeEstimate> {
    if n == 0 {
        return Err(Error::InvalidArgument("sample count must be positive".into()));
    }
    let scale = if region.is_torus() { TAU } else { 2.0 };
    let hits: u64 = run_chunked(n, seed, None, |rng, count| {
        (0..count)
            .filter(|_| region.contains([scale * rng.uniform(), scale * rng.uniform(), scale * rng.uniform()]))
            .count() as u64
    })?
    .into_iter()
    .sum();
    let p = hits as f64 / n as f64;
    let box_vol = region.reference_volume();
    Ok(VolumeEstimate {
        region,
        samples: n,
        hits,
        hit_fraction: p,
        estimate: p * box_vol,
        std_error: box_vol * (p * (1.0 - p) / n as f64).sqrt(),
        analytic: region.analytic_volume(),
    })
}

/// How trefoils are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Closed-form necessary conditions on action-angle coordinates.
    Predicate,
    /// Geometric construction and classification.
    Oracle,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Predicate => "predicate",
            Self::Oracle => "oracle",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "predicate" => Ok(Self::Predicate),
            "oracle" => Ok(Self::Oracle),
            _ => Err(Error::InvalidArgument(format!("unknown mode `{s}`"))),
        }
    }
}

/// Per-class cross tabulation of oracle classes and predicate hits.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassAgreement {
    pub oracle: u64,
    pub predicate: u64,
    pub both: u64,
}

/// Oracle trefoils failing each necessary condition for their own class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterViolations {
    pub predicate: u64,
    pub curl_range: u64,
    pub angle_sums: u64,
    pub distinct_diagonals: u64,
    pub largest_diagonal_window: u64,
    /// Trefoils failing at least one of the above.
    pub any: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Agreement {
    pub per_class: BTreeMap<KnotClass, ClassAgreement>,
    pub filter_violations: FilterViolations,
    /// Predicate hits whose hexagon is not a trefoil of that class.
    pub predicate_only: u64,
    /// `both / (oracle ∪ predicate)` over the four trefoil classes.
    pub agreement_rate: f64,
}

/// Spread of `fraction_R_plus` over runs with seeds `seed, seed + 1, …`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepeatSummary {
    pub count: u32,
    pub fractions_r_plus: Vec<f64>,
    pub mean_r_plus: f64,
    /// Sample standard deviation (`n − 1` denominator).
    pub std_r_plus: f64,
    pub mean_total: f64,
    pub std_total: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimationReport {
    pub samples: u64,
    pub seed: u64,
    pub mode: Mode,
    /// Samples per class, excluding degenerate ones. Predicate mode counts
    /// samples meeting each class's predicate plus `none`.
    pub hits: BTreeMap<String, u64>,
    pub degenerate_count: u64,
    #[serde(rename = "fraction_R_plus")]
    pub fraction_r_plus: f64,
    pub fraction_total: f64,
    /// Binomial standard error of `fraction_R_plus`.
    pub std_error: f64,
    pub ci95: [f64; 2],
    pub std_error_total: f64,
    pub ci95_total: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agreement: Option<Agreement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub repeats: Option<RepeatSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_seconds: Option<f64>,
}

const CSV_COLUMNS: [&str; 16] = [
    "samples",
    "seed",
    "mode",
    "degenerate_count",
    "unknot",
    "trefoil_R+",
    "trefoil_R-",
    "trefoil_L+",
    "trefoil_L-",
    "fraction_R_plus",
    "fraction_total",
    "std_error",
    "ci95_low",
    "ci95_high",
    "std_error_total",
    "wall_time_seconds",
];

impl EstimationReport {
    /// Samples that entered the fractions.
    pub fn usable(&self) -> u64 {
        self.samples - self.degenerate_count
    }

    pub fn hit_count(&self, class: KnotClass) -> u64 {
        self.hits.get(class.as_str()).copied().unwrap_or(0)
    }

    pub fn fraction(&self, class: KnotClass) -> f64 {
        self.hit_count(class) as f64 / self.usable().max(1) as f64
    }

    pub fn without_timing(mut self) -> Self {
        self.wall_time_seconds = None;
        self
    }

    pub fn csv_header() -> String {
        CSV_COLUMNS.join(",")
    }

    /// One summary line matching [`Self::csv_header`]. Floats use the
    /// shortest representation that parses back to the same value.
    pub fn csv_row(&self) -> String {
        let mut cells = vec![
            self.samples.to_string(),
            self.seed.to_string(),
            self.mode.to_string(),
            self.degenerate_count.to_string(),
        ];
        for class in [KnotClass::Unknot].into_iter().chain(KnotClass::TREFOILS) {
            cells.push(self.hit_count(class).to_string());
        }
        for x in [
            self.fraction_r_plus,
            self.fraction_total,
            self.std_error,
            self.ci95[0],
            self.ci95[1],
            self.std_error_total,
        ] {
            cells.push(x.to_string());
        }
        cells.push(self.wall_time_seconds.map(|t| t.to_string()).unwrap_or_default());
        cells.join(",")
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.into(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n").map_err(|source| Error::Io {
            path: path.into(),
            source,
        })
    }
}

/// Per-chunk counts; merged by summation so the result is schedule-independent.
#[derive(Debug, Clone, Default)]
struct Tally {
    classes: BTreeMap<KnotClass, u64>,
    predicate_none: u64,
    agreement: BTreeMap<KnotClass, ClassAgreement>,
    violations: FilterViolations,
    predicate_only: u64,
}

impl Tally {
    fn merge(&mut self, other: Tally) {
        for (k, v) in other.classes {
            *self.classes.entry(k).or_default() += v;
        }
        self.predicate_none += other.predicate_none;
        for (k, v) in other.agreement {
            let e = self.agreement.entry(k).or_default();
            e.oracle += v.oracle;
            e.predicate += v.predicate;
            e.both += v.both;
        }
        let (a, b) = (&mut self.violations, other.violations);
        a.predicate += b.predicate;
        a.curl_range += b.curl_range;
        a.angle_sums += b.angle_sums;
        a.distinct_diagonals += b.distinct_diagonals;
        a.largest_diagonal_window += b.largest_diagonal_window;
        a.any += b.any;
        self.predicate_only += other.predicate_only;
    }
}

fn predicate_chunk(rng: &mut RandomStream, count: u64) -> Result<Tally> {
    let mut tally = Tally::default();
    for _ in 0..count {
        match predicate_class(&sample_coords(rng))? {
            Some(class) => *tally.classes.entry(class).or_default() += 1,
            None => tally.predicate_none += 1,
        }
    }
    Ok(tally)
}

fn oracle_chunk(rng: &mut RandomStream, count: u64) -> Result<Tally> {
    let mut tally = Tally::default();
    for _ in 0..count {
        let aa = sample_coords(rng);
        let class = classify(&build_hexagon(&aa)?);
        *tally.classes.entry(class).or_default() += 1;
        if class == KnotClass::Degenerate {
            continue;
        }
        let predicted = predicate_class(&aa)?;
        if let Some(p) = predicted {
            tally.agreement.entry(p).or_default().predicate += 1;
            if p != class {
                tally.predicate_only += 1;
            }
        }
        if let Some(j) = class.invariant().filter(|j| j.is_trefoil()) {
            let entry = tally.agreement.entry(class).or_default();
            entry.oracle += 1;
            let predicate_ok = predicted == Some(class);
            if predicate_ok {
                entry.both += 1;
            }
            let filters = lemma_filters(&aa, j)?;
            let v = &mut tally.violations;
            v.predicate += u64::from(!predicate_ok);
            v.curl_range += u64::from(!filters.curl_range);
            v.angle_sums += u64::from(!filters.angle_sums);
            v.distinct_diagonals += u64::from(!filters.distinct_diagonals);
            v.largest_diagonal_window += u64::from(!filters.largest_diagonal_window);
            v.any += u64::from(!predicate_ok || !filters.passes());
        }
    }
    Ok(tally)
}

fn binomial(p: f64, n: u64) -> (f64, [f64; 2]) {
    let se = (p * (1.0 - p) / n as f64).sqrt();
    (se, [p - Z95 * se, p + Z95 * se])
}

/// Monte Carlo estimate of the trefoil fraction among random equilateral hexagons.
///
/// The result depends only on `(n, seed, mode)`; `workers` sets the thread
/// count (`None` for the rayon default).
pub fn estimate_knotting_probability(
    n: u64,
    seed: u64,
    mode: Mode,
    workers: Option<usize>,
) -> Result<EstimationReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("sample count must be positive".into()));
    }
    let start = Instant::now();
    let chunk = match mode {
        Mode::Predicate => predicate_chunk,
        Mode::Oracle => oracle_chunk,
    };
    let mut tally = Tally::default();
    for part in run_chunked(n, seed, workers, chunk)? {
        tally.merge(part?);
    }

    let degenerate_count = tally.classes.remove(&KnotClass::Degenerate).unwrap_or(0);
    let usable = n - degenerate_count;
    let mut hits: BTreeMap<String, u64> = BTreeMap::new();
    if mode == Mode::Oracle {
        hits.insert(KnotClass::Unknot.as_str().into(), 0);
    }
    for class in KnotClass::TREFOILS {
        hits.insert(class.as_str().into(), 0);
    }
    for (class, count) in &tally.classes {
        hits.insert(class.as_str().into(), *count);
    }
    if mode == Mode::Predicate {
        hits.insert("none".into(), tally.predicate_none);
    }

    let count = |c: KnotClass| tally.classes.get(&c).copied().unwrap_or(0);
    let fraction_r_plus = count(KnotClass::RightTrefoilCurlPlus) as f64 / usable.max(1) as f64;
    let (std_error, ci95) = binomial(fraction_r_plus, usable.max(1));
    let (fraction_total, std_error_total) = match mode {
        // the four classes are mirror/reversal images of equal measure
        Mode::Predicate => (4.0 * fraction_r_plus, 4.0 * std_error),
        Mode::Oracle => {
            let t = KnotClass::TREFOILS.iter().map(|&c| count(c)).sum::<u64>() as f64 / usable.max(1) as f64;
            (t, binomial(t, usable.max(1)).0)
        }
    };
    let ci95_total = [
        fraction_total - Z95 * std_error_total,
        fraction_total + Z95 * std_error_total,
    ];

    let agreement = (mode == Mode::Oracle).then(|| {
        let per_class: BTreeMap<KnotClass, ClassAgreement> = KnotClass::TREFOILS
            .iter()
            .map(|&c| (c, tally.agreement.get(&c).copied().unwrap_or_default()))
            .collect();
        let both: u64 = per_class.values().map(|a| a.both).sum();
        let union: u64 = per_class.values().map(|a| a.oracle + a.predicate - a.both).sum();
        Agreement {
            per_class,
            filter_violations: tally.violations,
            predicate_only: tally.predicate_only,
            agreement_rate: if union == 0 { 1.0 } else { both as f64 / union as f64 },
        }
    });

    Ok(EstimationReport {
        samples: n,
        seed,
        mode,
        hits,
        degenerate_count,
        fraction_r_plus,
        fraction_total,
        std_error,
        ci95,
        std_error_total,
        ci95_total,
        agreement,
        repeats: None,
        wall_time_seconds: Some(start.elapsed().as_secs_f64()),
    })
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = if xs.len() > 1 {
        xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    (mean, var.sqrt())
}

/// The run with `seed` plus a [`RepeatSummary`] over seeds `seed..seed + repeats`.
pub fn estimate_with_repeats(
    n: u64,
    seed: u64,
    mode: Mode,
    workers: Option<usize>,
    repeats: u32,
) -> Result<EstimationReport> {
    if repeats == 0 {
        return Err(Error::InvalidArgument("repeats must be at least 1".into()));
    }
    let start = Instant::now();
    let mut base = estimate_knotting_probability(n, seed, mode, workers)?;
    let mut r_plus = vec![base.fraction_r_plus];
    let mut totals = vec![base.fraction_total];
    for r in 1..repeats {
        let run = estimate_knotting_probability(n, seed.wrapping_add(u64::from(r)), mode, workers)?;
        r_plus.push(run.fraction_r_plus);
        totals.push(run.fraction_total);
    }
    let (mean_r_plus, std_r_plus) = mean_std(&r_plus);
    let (mean_total, std_total) = mean_std(&totals);
    base.repeats = Some(RepeatSummary {
        count: repeats,
        fractions_r_plus: r_plus,
        mean_r_plus,
        std_r_plus,
        mean_total,
        std_total,
    });
    base.wall_time_seconds = Some(start.elapsed().as_secs_f64());
    Ok(base)
}

/// The bound beside `1/42` and, when available, a Monte Carlo estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub upper_bound: f64,
    pub curl_plus_bound: f64,
    pub one_over_42: f64,
    pub bound_below_one_over_42: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub estimate: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ci95_upper: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub estimate_below_bound: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub estimate_below_one_over_42: Option<bool>,
    pub note: String,
}

impl BoundReport {
    /// The closed-form comparison without an estimate.
    pub fn analytic() -> Self {
        let t = analytic_volumes();
        let one_over_42 = 1.0 / 42.0;
        let below = t.upper_bound < one_over_42;
        let note = if below {
            "(14 - 3π)/192 < 1/42".to_string()
        } else {
            format!(
                "(14 - 3π)/192 = {} exceeds 1/42 = {} by {}; the bound is not below 1/42",
                t.upper_bound,
                one_over_42,
                t.upper_bound - one_over_42
            )
        };
        Self {
            upper_bound: t.upper_bound,
            curl_plus_bound: t.curl_plus_bound,
            one_over_42,
            bound_below_one_over_42: below,
            estimate: None,
            ci95_upper: None,
            estimate_below_bound: None,
            estimate_below_one_over_42: None,
            note,
        }
    }
}

/// Compares an estimate of the total trefoil fraction with the bound.
/// Fails if the upper 95% edge of the estimate reaches the bound.
pub fn compare_bound(report: &EstimationReport) -> Result<BoundReport> {
    if report.samples == 0 || report.usable() == 0 {
        return Err(Error::NoSamples);
    }
    let mut out = BoundReport::analytic();
    let ci_upper = report.ci95_total[1];
    out.estimate = Some(report.fraction_total);
    out.ci95_upper = Some(ci_upper);
    out.estimate_below_bound = Some(report.fraction_total < out.upper_bound);
    out.estimate_below_one_over_42 = Some(report.fraction_total < out.one_over_42);
    if ci_upper >= out.upper_bound {
        return Err(Error::BoundViolated {
            ci_upper,
            bound: out.upper_bound,
        });
    }
    Ok(out)
}
