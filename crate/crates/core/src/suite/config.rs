//! Check identifiers and per-check configuration.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cone::n_over_k;
use crate::error::{Error, Result};
use crate::random::rng::DEFAULT_SEED;
use crate::FieldTag;

pub const DEFAULT_Z_THRESHOLD: f64 = 3.0;
pub const DEFAULT_EXACT_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    GammaIntegral,
    BetaIntegral,
    PolarMeasure,
    BistiefelI,
    BistiefelIi,
    Jacobian,
    Switch,
    Prop35,
    Lemma43,
    Prop44,
    FracSemigroup,
    CapelliInverse,
    Lemma45Limit,
    InversionK1,
}

impl CheckId {
    pub const ALL: [CheckId; 14] = [
        CheckId::GammaIntegral,
        CheckId::BetaIntegral,
        CheckId::PolarMeasure,
        CheckId::BistiefelI,
        CheckId::BistiefelIi,
        CheckId::Jacobian,
        CheckId::Switch,
        CheckId::Prop35,
        CheckId::Lemma43,
        CheckId::Prop44,
        CheckId::FracSemigroup,
        CheckId::CapelliInverse,
        CheckId::Lemma45Limit,
        CheckId::InversionK1,
    ];

    pub const fn as_str(self) -> &'static str {
        match self {
            CheckId::GammaIntegral => "gamma_integral",
            CheckId::BetaIntegral => "beta_integral",
            CheckId::PolarMeasure => "polar_measure",
            CheckId::BistiefelI => "bistiefel_i",
            CheckId::BistiefelIi => "bistiefel_ii",
            CheckId::Jacobian => "jacobian",
            CheckId::Switch => "switch",
            CheckId::Prop35 => "prop35",
            CheckId::Lemma43 => "lemma43",
            CheckId::Prop44 => "prop44",
            CheckId::FracSemigroup => "frac_semigroup",
            CheckId::CapelliInverse => "capelli_inverse",
            CheckId::Lemma45Limit => "lemma45_limit",
            CheckId::InversionK1 => "inversion_k1",
        }
    }

    /// One-line description for `list-checks`.
    pub const fn summary(self) -> &'static str {
        match self {
            CheckId::GammaIntegral => "cone Gamma integral against the product formula",
            CheckId::BetaIntegral => "cone Beta integral, plain and on a shifted interval",
            CheckId::PolarMeasure => "polar coordinates on M_(n,k): Gaussian identity and a second integrand",
            CheckId::BistiefelI => "bi-Stiefel coordinates on M_(n,k) with constant C1",
            CheckId::BistiefelIi => "law of the top block Gram matrix of a Haar frame against the density with C2",
            CheckId::Jacobian => "change of variables (r, s) -> (s^1/2 r s^1/2, s^1/2 (I - r) s^1/2)",
            CheckId::Switch => "three Stiefel averages of f(v* u) that agree by invariance",
            CheckId::Prop35 => "fractional integrals of the two Stiefel averages H1, H2 related by C3",
            CheckId::Lemma43 => "Stiefel average through the mean-value operator W",
            CheckId::Prop44 => "fractional integrals of Phi1 (through T and R) and Phi0 (through W) related by C3",
            CheckId::FracSemigroup => "I^lambda I^mu = I^(lambda + mu)",
            CheckId::CapelliInverse => "Delta(d)^m inverts I^m on Delta powers",
            CheckId::Lemma45Limit => "W_(delta a) f -> f as a -> I",
            CheckId::InversionK1 => "rank-one Radon inversion round trip",
        }
    }

    fn uses_n(self) -> bool {
        matches!(
            self,
            CheckId::PolarMeasure
                | CheckId::BistiefelI
                | CheckId::BistiefelIi
                | CheckId::Lemma43
                | CheckId::Prop44
                | CheckId::Lemma45Limit
                | CheckId::InversionK1
        )
    }

    fn uses_kp(self) -> bool {
        matches!(
            self,
            CheckId::BistiefelI
                | CheckId::BistiefelIi
                | CheckId::Switch
                | CheckId::Prop35
                | CheckId::Prop44
                | CheckId::InversionK1
        )
    }

    /// Exact checks compare against a tolerance instead of a z-score.
    pub fn is_exact(self) -> bool {
        matches!(self, CheckId::CapelliInverse | CheckId::InversionK1)
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL.into_iter().find(|c| c.as_str() == s.trim()).ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

/// Partial configuration as written in a manifest or on the command line.
/// Missing entries take the check's defaults.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldTag>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kp: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit_degree: Option<usize>,
}

impl CheckSpec {
    pub fn field(mut self, f: FieldTag) -> Self {
        self.field = Some(f);
        self
    }

    pub fn dims(mut self, n: usize, k: usize, kp: usize) -> Self {
        self.n = Some(n);
        self.k = Some(k);
        self.kp = Some(kp);
        self
    }

    pub fn samples(mut self, s: u64) -> Self {
        self.samples = Some(s);
        self
    }

    pub fn seed(mut self, s: u64) -> Self {
        self.seed = Some(s);
        self
    }
}

/// Fully resolved configuration echoed in every report. Parameters a check
/// does not use stay `None` and are omitted from the output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub field: FieldTag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kp: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels: Option<usize>,
    pub samples: u64,
    pub seed: u64,
    pub z_threshold: f64,
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit_degree: Option<usize>,
    /// Worker count; results do not depend on it, so it is not reported.
    #[serde(skip)]
    pub shards: Option<usize>,
}

impl CheckConfig {
    pub fn n(&self) -> usize {
        self.n.unwrap_or(0)
    }

    pub fn kp(&self) -> usize {
        self.kp.unwrap_or(self.k)
    }

    pub fn nk(&self) -> f64 {
        n_over_k(self.field, self.k)
    }

    pub fn mc(&self, tag: u64) -> crate::random::McConfig {
        let c = crate::random::McConfig::new(self.samples, crate::random::derive_seed(self.seed, tag));
        match self.shards {
            Some(s) => c.with_shards(s),
            None => c,
        }
    }
}

fn infeasible(msg: String) -> Error {
    Error::Infeasible(msg)
}

/// Fill in defaults for `id` and check the dimension constraints.
pub fn resolve(id: CheckId, spec: &CheckSpec) -> Result<CheckConfig> {
    use CheckId::*;
    let field = spec.field.unwrap_or(if id == CapelliInverse { FieldTag::Complex } else { FieldTag::Real });
    let default_k = match id {
        BetaIntegral | Jacobian | CapelliInverse => 2,
        _ => 1,
    };
    let k = spec.k.unwrap_or(default_k);
    if k == 0 {
        return Err(infeasible("k >= 1 required".into()));
    }
    let kp = if id.uses_kp() { Some(spec.kp.unwrap_or((k + 1).max(2))) } else { None };
    let n = if id.uses_n() {
        let lo = match id {
            Lemma43 | Lemma45Limit => 2 * k + 2,
            PolarMeasure => k + 3,
            _ => k + kp.unwrap_or(k) + 1,
        };
        Some(spec.n.unwrap_or(lo.max(4)))
    } else {
        None
    };
    let nk = n_over_k(field, k);

    if let Some(kp) = kp {
        if k > kp {
            return Err(infeasible(format!("k <= k' required (k={k}, k'={kp})")));
        }
        if let Some(n) = n {
            if k + kp > n {
                return Err(infeasible(format!("k + k' <= n required (k={k}, k'={kp}, n={n})")));
            }
        }
    }
    if let Some(n) = n {
        if k > n {
            return Err(infeasible(format!("k <= n required (k={k}, n={n})")));
        }
        if matches!(id, Lemma43 | Prop44 | Lemma45Limit) && 2 * k > n {
            return Err(infeasible(format!("2k <= n required for the mean-value operator (k={k}, n={n})")));
        }
    }
    if id == InversionK1 {
        if k != 1 {
            return Err(infeasible(format!("numerical inversion is implemented for k = 1 only, got k={k}")));
        }
        if kp == Some(1) {
            return Err(infeasible("1 < k' required for inversion".into()));
        }
    }
    if id == CapelliInverse && k > crate::cone::cayley::MAX_CAYLEY_RANK {
        return Err(infeasible(format!("k <= {} required for the Cayley operator, got k={k}", crate::cone::cayley::MAX_CAYLEY_RANK)));
    }

    let samples = spec.samples.unwrap_or(match id {
        Prop44 | Lemma45Limit | Lemma43 => 50_000,
        InversionK1 => 20_000,
        CapelliInverse | FracSemigroup => 20_000,
        _ => 100_000,
    });
    let mut c = CheckConfig {
        field,
        n,
        k,
        kp,
        lambda: None,
        mu: None,
        nu: None,
        eps: None,
        eps2: None,
        t: None,
        m: None,
        zeta: None,
        levels: None,
        samples,
        seed: spec.seed.unwrap_or(DEFAULT_SEED),
        z_threshold: spec.z_threshold.unwrap_or(DEFAULT_Z_THRESHOLD),
        tol: spec.tol.unwrap_or(match id {
            CapelliInverse => 1e-12,
            FracSemigroup if k == 1 => 1e-6,
            FracSemigroup => 1e-12,
            InversionK1 => 0.05,
            _ => DEFAULT_EXACT_TOL,
        }),
        points: None,
        grid_size: None,
        fit_degree: None,
        shards: None,
    };
    match id {
        GammaIntegral => {
            c.lambda = Some(spec.lambda.unwrap_or(nk + 0.5));
            c.t = Some(spec.t.unwrap_or(1.0));
        }
        BetaIntegral => {
            c.lambda = Some(spec.lambda.unwrap_or(nk + 0.5));
            c.mu = Some(spec.mu.unwrap_or(nk + 1.0));
        }
        Jacobian => c.lambda = Some(spec.lambda.unwrap_or(nk + 1.0)),
        Prop35 => {
            c.eps = Some(spec.eps.unwrap_or(0.5));
            c.eps2 = Some(spec.eps2.unwrap_or(1.5));
        }
        Prop44 => c.eps = Some(spec.eps.unwrap_or(0.5)),
        FracSemigroup => {
            c.lambda = Some(spec.lambda.unwrap_or(if k == 1 { 0.7 } else { nk + 0.5 }));
            c.mu = Some(spec.mu.unwrap_or(if k == 1 { 1.3 } else { nk + 0.25 }));
            if k > 1 {
                c.nu = Some(spec.nu.unwrap_or(nk + 1.0));
            }
            c.t = Some(spec.t.unwrap_or(0.9));
        }
        CapelliInverse => {
            c.m = Some(spec.m.unwrap_or(3));
            c.mu = Some(spec.mu.unwrap_or(3.0));
        }
        Lemma45Limit => {
            c.zeta = Some(spec.zeta.unwrap_or(0.5));
            c.levels = Some(spec.levels.unwrap_or(8));
        }
        InversionK1 => {
            c.m = spec.m;
            c.points = Some(spec.points.unwrap_or(5));
            c.grid_size = Some(spec.grid_size.unwrap_or(24));
            c.fit_degree = Some(spec.fit_degree.unwrap_or(12));
        }
        _ => {}
    }
    if id == Lemma45Limit && c.levels.is_some_and(|l| l < 3) {
        return Err(Error::Config("lemma45_limit needs at least 3 levels".into()));
    }
    if c.samples < 2 {
        return Err(Error::Config(format!("at least 2 samples required, got {}", c.samples)));
    }
    Ok(c)
}
