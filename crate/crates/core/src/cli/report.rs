//! End-to-end analysis of one code and its report.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bounds;
use crate::code::{self, QccSpec, QuasiCyclicCode, DEFAULT_ENUM_LIMIT};
use crate::error::{Error, Result};
use crate::group::{self, GroupKind};

/// Options for [`analyze`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisConfig {
    /// Largest number of codewords to enumerate.
    pub max_enum: u64,
    /// Groups to analyze; `None` means all applicable ones. Requesting `Full`
    /// explicitly turns a closure failure into an error.
    pub groups: Option<Vec<GroupKind>>,
    /// Which primitive element of the splitting field defines `zeta`.
    pub omega_index: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            max_enum: DEFAULT_ENUM_LIMIT,
            groups: None,
            omega_index: 1,
        }
    }
}

impl AnalysisConfig {
    fn validate(&self) -> Result<()> {
        if self.max_enum == 0 {
            return Err(Error::invalid("max-enum must be at least 1"));
        }
        if self.omega_index == 0 {
            return Err(Error::invalid("omega-index must be at least 1"));
        }
        if matches!(&self.groups, Some(g) if g.is_empty()) {
            return Err(Error::invalid("at least one group must be requested"));
        }
        Ok(())
    }

    fn kinds(&self) -> Vec<GroupKind> {
        let mut kinds = self.groups.clone().unwrap_or_else(|| GroupKind::ALL.to_vec());
        kinds.sort();
        kinds.dedup();
        kinds
    }

    fn explicit(&self, kind: GroupKind) -> bool {
        matches!(&self.groups, Some(g) if g.contains(&kind))
    }
}

/// A nonnegative integer that serializes as a JSON number when it fits in
/// `u64` and as a decimal string otherwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Count(pub BigUint);

impl From<u64> for Count {
    fn from(n: u64) -> Self {
        Count(BigUint::from(n))
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(n) => s.serialize_u64(n),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Count {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(n) => Ok(Count::from(n)),
            Raw::Text(t) => t.parse().map(Count).map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    pub q: u64,
    pub m: u64,
    pub l: usize,
    pub n: usize,
    /// Multiplicative order of `q` modulo `m`.
    pub m_prime: u64,
    /// Dimension `K` over `F_q`.
    pub dimension: usize,
    /// Number of codewords `q^K`.
    pub size: Count,
    pub omega_index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetInfo {
    pub rep: u64,
    pub members: Vec<u64>,
    pub size: usize,
}

/// Field elements are written as packed integers `c_0 + c_1 p + ...` of their
/// coordinates over the prime field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstituentInfo {
    pub coset_rep: u64,
    pub coset: Vec<u64>,
    pub k: usize,
    pub rank: usize,
    /// `K_t`.
    pub dimension: usize,
    /// Minimal polynomial, ascending coefficients.
    pub h: Vec<u32>,
    /// Generator polynomial, ascending coefficients.
    pub g: Vec<u32>,
    pub idempotent: Vec<u32>,
    pub qualifies: bool,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaValue {
    pub value: Count,
    /// Per-subset summands, subsets in bitmask order over the nonzero
    /// constituents.
    pub terms: Vec<Count>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitCount {
    /// Breadth-first orbit partition.
    pub partition: u64,
    /// Burnside's lemma over all group elements.
    pub burnside: Count,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub parameters: Parameters,
    pub cosets: Vec<CosetInfo>,
    pub constituents: Vec<ConstituentInfo>,
    /// Closed-form orbit counts by group name.
    pub bounds: BTreeMap<String, FormulaValue>,
    /// Brute-force orbit counts by group name.
    pub orbit_counts: BTreeMap<String, OrbitCount>,
    pub weight_distribution: Option<BTreeMap<usize, u64>>,
    pub s: Option<usize>,
    /// `s(C) == N` per group, checked by comparing weight classes with orbits.
    pub tightness: BTreeMap<String, bool>,
    /// Set when the full-group formula exceeds the brute-force count.
    pub full_formula_exceeds_count: Option<bool>,
    pub warnings: Vec<String>,
}

fn count(n: BigUint) -> Count {
    Count(n)
}

fn formula(terms: Vec<BigUint>) -> FormulaValue {
    FormulaValue {
        value: count(terms.iter().sum()),
        terms: terms.into_iter().map(count).collect(),
    }
}

/// Builds the code and everything that does not need enumeration: cosets,
/// constituent data and closed-form values.
fn base_report(code: &QuasiCyclicCode, kinds: &[GroupKind], cfg: &AnalysisConfig) -> Result<BoundReport> {
    let ctx = code.ctx();
    let spec = code.spec();
    let mut warnings = Vec::new();
    if spec.constituents.is_empty() {
        warnings.push("no constituents given; this is the zero code".to_string());
    }
    let constituents: Vec<ConstituentInfo> = code
        .constituents()
        .iter()
        .map(|c| {
            if c.is_degenerate() {
                warnings.push(format!(
                    "constituent with coset {} has only zero rows and is left out of the formulas",
                    c.coset_rep
                ));
            }
            ConstituentInfo {
                coset_rep: c.coset_rep,
                coset: c.coset.sorted_members(),
                k: c.k(),
                rank: c.rank(),
                dimension: c.dimension(),
                h: c.field.modulus().to_vec(),
                g: c.generator.coeffs().to_vec(),
                idempotent: c.field.idempotent().coeffs().to_vec(),
                qualifies: c.qualifies,
                degenerate: c.is_degenerate(),
            }
        })
        .collect();

    let arith = code.arith();
    let (q, m) = (spec.q, spec.m);
    let mut bounds_map = BTreeMap::new();
    for &kind in kinds {
        let value = match kind {
            GroupKind::Shift => formula(bounds::shift_terms(&arith, m, q)?),
            GroupKind::ShiftScalar => {
                let exact = formula(bounds::shift_scalar_terms(&arith, m, q)?);
                let separate: BigUint = bounds::shift_scalar_terms_per_constituent(&arith, m, q)?.into_iter().sum();
                if separate != exact.value.0 {
                    warnings.push(format!(
                        "shift-scalar: checking the scalar condition per constituent gives {separate}, \
                         but no common shift realizes it; the exact count is {}",
                        exact.value
                    ));
                }
                exact
            }
            GroupKind::Full => {
                let live: Vec<_> = code.constituents().iter().filter(|c| !c.is_degenerate()).collect();
                if let Some(c) = live.iter().find(|c| !c.qualifies) {
                    warnings.push(format!(
                        "full-group formula skipped: constituent with coset {} is not a single row with \
                         identical nonzero entries",
                        c.coset_rep
                    ));
                    continue;
                }
                formula(bounds::full_terms(&arith, m, q)?)
            }
        };
        bounds_map.insert(kind.name().to_string(), value);
    }

    Ok(BoundReport {
        parameters: Parameters {
            q,
            m,
            l: spec.l,
            n: code.length(),
            m_prime: ctx.m_prime(),
            dimension: code.dimension(),
            size: count(code.size()),
            omega_index: cfg.omega_index,
        },
        cosets: ctx
            .cosets()
            .iter()
            .map(|c| CosetInfo {
                rep: c.rep,
                members: c.members.clone(),
                size: c.size(),
            })
            .collect(),
        constituents,
        bounds: bounds_map,
        orbit_counts: BTreeMap::new(),
        weight_distribution: None,
        s: None,
        tightness: BTreeMap::new(),
        full_formula_exceeds_count: None,
        warnings,
    })
}

/// Drops `Full` (with a warning) when `mu_q` does not preserve the code,
/// unless it was requested explicitly.
fn applicable_kinds(code: &QuasiCyclicCode, cfg: &AnalysisConfig, warnings: &mut Vec<String>) -> Result<Vec<GroupKind>> {
    let mut out = Vec::new();
    for kind in cfg.kinds() {
        match group::check_closure(code, kind) {
            Ok(()) => out.push(kind),
            Err(e) if cfg.explicit(kind) => return Err(e),
            Err(_) => warnings.push(format!("the {kind} group does not preserve this code; skipped")),
        }
    }
    Ok(out)
}

/// Closed-form values only, without enumeration.
pub fn bounds_only(spec: QccSpec, cfg: &AnalysisConfig) -> Result<BoundReport> {
    cfg.validate()?;
    let code = QuasiCyclicCode::build(spec, cfg.omega_index)?;
    let mut warnings = Vec::new();
    let kinds = applicable_kinds(&code, cfg, &mut warnings)?;
    let mut report = base_report(&code, &kinds, cfg)?;
    report.warnings.extend(warnings);
    Ok(report)
}

/// Full analysis: formulas, enumeration, brute-force orbit counts and
/// tightness.
pub fn analyze(spec: QccSpec, cfg: &AnalysisConfig) -> Result<BoundReport> {
    cfg.validate()?;
    let code = QuasiCyclicCode::build(spec, cfg.omega_index)?;
    let mut warnings = Vec::new();
    let kinds = applicable_kinds(&code, cfg, &mut warnings)?;
    let mut report = base_report(&code, &kinds, cfg)?;
    report.warnings.extend(warnings);

    let weights = code.weights(cfg.max_enum)?;
    let wd = code::WeightDistribution::from_weights(&weights);
    if BigUint::from(wd.total()) != code.size() {
        return Err(Error::internal("weight distribution does not sum to q^K"));
    }
    let s = code::nonzero_weight_count(&wd);

    for &kind in &kinds {
        let partition = group::orbit_partition(&code, kind, cfg.max_enum)?;
        let burnside = group::burnside_count(&code, kind)?;
        if BigUint::from(partition.count) != burnside {
            return Err(Error::internal(format!(
                "{kind}: orbit partition gives {} but Burnside's lemma gives {burnside}",
                partition.count
            )));
        }
        let tight = group::tightness_check(&weights, &partition);
        if tight != (s as u64 == partition.count) {
            return Err(Error::internal(format!("{kind}: tightness disagrees with s == N")));
        }
        if (s as u64) > partition.count {
            return Err(Error::internal(format!("{kind}: s(C) exceeds the orbit count")));
        }
        if let Some(f) = report.bounds.get(kind.name()) {
            let brute = BigUint::from(partition.count);
            match kind {
                GroupKind::Full => report.full_formula_exceeds_count = Some(f.value.0 > brute),
                _ if f.value.0 != brute => report.warnings.push(format!(
                    "{kind}: closed form {} differs from the brute-force count {brute}",
                    f.value
                )),
                _ => {}
            }
            if kind == GroupKind::Full && f.value.0 < brute {
                report.warnings.push(format!(
                    "full: closed form {} is below the brute-force count {brute}",
                    f.value
                ));
            }
        }
        report.orbit_counts.insert(
            kind.name().to_string(),
            OrbitCount {
                partition: partition.count,
                burnside: count(burnside),
            },
        );
        report.tightness.insert(kind.name().to_string(), tight);
    }
    report.weight_distribution = Some(wd.counts);
    report.s = Some(s);
    Ok(report)
}

fn poly_text(coeffs: &[u32]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(e, &c)| match (e, c) {
            (0, c) => c.to_string(),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}*x"),
            (e, 1) => format!("x^{e}"),
            (e, c) => format!("{c}*x^{e}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// Human-readable rendering.
pub fn render_text(r: &BoundReport) -> String {
    let mut out = String::new();
    let p = &r.parameters;
    let _ = writeln!(
        out,
        "code: q={} m={} l={} n={} K={} |C|={} m'={} omega-index={}",
        p.q, p.m, p.l, p.n, p.dimension, p.size, p.m_prime, p.omega_index
    );
    for c in &r.constituents {
        let _ = writeln!(
            out,
            "constituent coset={} {:?}: k={} rank={} K_t={}{}{}",
            c.coset_rep,
            c.coset,
            c.k,
            c.rank,
            c.dimension,
            if c.qualifies { " (single-row form)" } else { "" },
            if c.degenerate { " (degenerate)" } else { "" },
        );
        let _ = writeln!(out, "  h = {}", poly_text(&c.h));
        let _ = writeln!(out, "  g = {}", poly_text(&c.g));
    }
    for (name, f) in &r.bounds {
        let terms: Vec<String> = f.terms.iter().map(Count::to_string).collect();
        let _ = writeln!(out, "bound {name}: {} = {}", terms.join(" + "), f.value);
    }
    for (name, o) in &r.orbit_counts {
        let tight = r.tightness.get(name).copied().unwrap_or(false);
        let _ = writeln!(
            out,
            "orbits {name}: {} (burnside {}), tight: {tight}",
            o.partition, o.burnside
        );
    }
    if let Some(wd) = &r.weight_distribution {
        let parts: Vec<String> = wd.iter().map(|(w, c)| format!("{w}:{c}")).collect();
        let _ = writeln!(out, "weight distribution: {{{}}}", parts.join(", "));
    }
    if let Some(s) = r.s {
        let _ = writeln!(out, "s = {s}");
    }
    if let Some(exceeds) = r.full_formula_exceeds_count {
        let _ = writeln!(out, "full formula exceeds brute-force count: {exceeds}");
    }
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}
