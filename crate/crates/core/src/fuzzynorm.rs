//! Fuzzy strong φ-b-norms on ℝⁿ.
//!
//! A [`FuzzyNormSpec`] bundles a membership function `N(x, t)` with the
//! relaxation constant `K ≥ 1`, the scalar function `φ`, the t-norm `∗` and a
//! crisp base norm that replaces `|x|` in the closed forms when `n > 1`.

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{PhiSpec, TNorm};
use crate::error::{Error, Result};

/// A point of ℝⁿ with finite coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Domain("vector must have at least one coordinate".into()));
        }
        if let Some(bad) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::Domain(format!("vector coordinate {bad} is not finite")));
        }
        Ok(Vector(coords))
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![0.0; dim])
    }

    /// The `i`-th standard basis vector of ℝ^dim.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        Vector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: f64) -> Vector {
        Vector(self.0.iter().map(|a| c * a).collect())
    }

    /// `Σ cᵢ vᵢ`; all vectors must share a dimension.
    pub fn combination(coeffs: &[f64], vectors: &[Vector]) -> Vector {
        let dim = vectors.first().map_or(0, Vector::dim);
        let mut out = vec![0.0; dim];
        for (c, v) in coeffs.iter().zip(vectors) {
            for (o, x) in out.iter_mut().zip(&v.0) {
                *o += c * x;
            }
        }
        Vector(out)
    }
}

impl Deref for Vector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for Vector {
    /// Unchecked conversion; prefer [`Vector::new`] for untrusted input.
    fn from(v: Vec<f64>) -> Self {
        Vector(v)
    }
}

/// Crisp norm on coordinates. On ℝ¹ every kind is `|x|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CrispNorm {
    #[serde(rename = "l1")]
    L1,
    #[serde(rename = "l2")]
    L2,
    #[serde(rename = "l-infinity")]
    LInf,
}

impl CrispNorm {
    pub fn value(self, x: &[f64]) -> f64 {
        match self {
            CrispNorm::L1 => x.iter().map(|c| c.abs()).sum(),
            CrispNorm::L2 => x.iter().fold(0.0f64, |acc, c| acc.hypot(*c)),
            CrispNorm::LInf => x.iter().fold(0.0f64, |acc, c| acc.max(c.abs())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CrispNorm::L1 => "l1",
            CrispNorm::L2 => "l2",
            CrispNorm::LInf => "l-infinity",
        }
    }
}

type MembershipFn = dyn Fn(&[f64], f64) -> f64 + Send + Sync;

/// A user-supplied membership function `N(x, t)`.
///
/// `scale_exponent` plays the role of `p` in the `t → ∞` surrogate
/// `T = 10⁹·(1 + base(x)^p)`.
#[derive(Clone)]
pub struct CustomMembership {
    name: String,
    scale_exponent: f64,
    f: Arc<MembershipFn>,
}

impl fmt::Debug for CustomMembership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomMembership")
            .field("name", &self.name)
            .field("scale_exponent", &self.scale_exponent)
            .finish()
    }
}

/// The two closed forms used as examples, plus user-supplied ones.
#[derive(Debug, Clone)]
pub enum NormKind {
    /// `N(x,t) = t / (t + base(x)^p)` for `t > 0`.
    Rational {
        p: f64,
    },
    /// `N(x,t) = exp(−base(x)^p / t)` for `t > 0`.
    Exponential {
        p: f64,
    },
    Custom(CustomMembership),
}

/// Selector for [`make_example_norm`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExampleKind {
    Rational,
    Exponential,
}

/// Closed-form shape for [`FuzzyNormSpec::power_form`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PowerForm {
    Rational,
    Exponential,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    /// `K = 1` and `φ = |·|`: an ordinary fuzzy norm.
    BsFuzzyNorm,
    StrictPhiBNorm,
}

/// `(X, N, φ, K, ∗)` with `X = ℝⁿ` and a crisp base norm.
#[derive(Debug, Clone)]
pub struct FuzzyNormSpec {
    kind: NormKind,
    k: f64,
    phi: PhiSpec,
    tnorm: TNorm,
    base: CrispNorm,
}

fn check_p(p: f64) -> Result<()> {
    if p.is_finite() && p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!("p must lie in (0,1], got {p}")))
    }
}

fn check_k(k: f64) -> Result<()> {
    if k.is_finite() && k >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!("K must be at least 1, got {k}")))
    }
}

impl FuzzyNormSpec {
    pub fn new(kind: NormKind, k: f64, phi: PhiSpec, tnorm: TNorm, base: CrispNorm) -> Result<Self> {
        check_k(k)?;
        if let NormKind::Rational { p } | NormKind::Exponential { p } = kind {
            check_p(p)?;
            let matches = match phi {
                PhiSpec::AbsPower(q) => q == p,
                PhiSpec::Abs => p == 1.0,
                _ => false,
            };
            if !matches {
                return Err(Error::InvalidSpec(format!(
                    "built-in norms require phi = abs-power(p) with p = {p}, got {}",
                    phi.name()
                )));
            }
        }
        if let NormKind::Custom(c) = &kind {
            if !(c.scale_exponent.is_finite() && c.scale_exponent > 0.0) {
                return Err(Error::InvalidSpec("custom scale exponent must be positive".into()));
            }
        }
        Ok(FuzzyNormSpec {
            kind,
            k,
            phi,
            tnorm,
            base,
        })
    }

    /// A norm from an arbitrary membership function, accepted without proof.
    pub fn custom<F>(
        name: impl Into<String>,
        scale_exponent: f64,
        f: F,
        k: f64,
        phi: PhiSpec,
        tnorm: TNorm,
        base: CrispNorm,
    ) -> Result<Self>
    where
        F: Fn(&[f64], f64) -> f64 + Send + Sync + 'static,
    {
        let kind = NormKind::Custom(CustomMembership {
            name: name.into(),
            scale_exponent,
            f: Arc::new(f),
        });
        Self::new(kind, k, phi, tnorm, base)
    }

    /// The rational or exponential closed form with an arbitrary exponent
    /// `q > 0`, packaged as a custom norm (no constraint tying `q`, `K` and `φ`).
    pub fn power_form(form: PowerForm, q: f64, k: f64, phi: PhiSpec, tnorm: TNorm, base: CrispNorm) -> Result<Self> {
        if !(q.is_finite() && q > 0.0) {
            return Err(Error::InvalidSpec(format!("exponent must be positive, got {q}")));
        }
        let name = match form {
            PowerForm::Rational => format!("rational-form(q={q})"),
            PowerForm::Exponential => format!("exponential-form(q={q})"),
        };
        Self::custom(
            name,
            q,
            move |x, t| {
                if t <= 0.0 {
                    return 0.0;
                }
                let r = base.value(x).powf(q);
                match form {
                    PowerForm::Rational => t / (t + r),
                    PowerForm::Exponential => (-r / t).exp(),
                }
            },
            k,
            phi,
            tnorm,
            base,
        )
    }

    /// Same space with `K` replaced; `K ≥ 1` is enforced.
    pub fn with_k(mut self, k: f64) -> Result<Self> {
        check_k(k)?;
        self.k = k;
        Ok(self)
    }

    pub fn with_tnorm(mut self, tnorm: TNorm) -> Self {
        self.tnorm = tnorm;
        self
    }

    pub fn kind(&self) -> &NormKind {
        &self.kind
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn phi(&self) -> &PhiSpec {
        &self.phi
    }

    pub fn tnorm(&self) -> &TNorm {
        &self.tnorm
    }

    pub fn base(&self) -> CrispNorm {
        self.base
    }

    pub fn name(&self) -> String {
        match &self.kind {
            NormKind::Rational { p } => format!("rational(p={p})"),
            NormKind::Exponential { p } => format!("exponential(p={p})"),
            NormKind::Custom(c) => c.name.clone(),
        }
    }

    /// True for the closed forms, which are strictly decreasing in `base(x)`.
    pub fn is_builtin(&self) -> bool {
        !matches!(self.kind, NormKind::Custom(_))
    }

    /// The exponent `p` used for the `t → ∞` surrogate.
    pub fn exponent(&self) -> f64 {
        match &self.kind {
            NormKind::Rational { p } | NormKind::Exponential { p } => *p,
            NormKind::Custom(c) => c.scale_exponent,
        }
    }

    /// `N(x, t)` without input validation. NaN results from custom membership
    /// functions are passed through for the checkers to score.
    pub fn value(&self, x: &[f64], t: f64) -> f64 {
        match &self.kind {
            NormKind::Rational { p } => {
                if t <= 0.0 {
                    0.0
                } else {
                    t / (t + self.base.value(x).powf(*p))
                }
            }
            NormKind::Exponential { p } => {
                if t <= 0.0 {
                    0.0
                } else {
                    (-self.base.value(x).powf(*p) / t).exp()
                }
            }
            NormKind::Custom(c) => (c.f)(x, t),
        }
    }

    /// Membership value of the pair `(x, t)`.
    pub fn membership(&self, x: &[f64], t: f64) -> Result<f64> {
        if t.is_nan() || x.iter().any(|c| c.is_nan()) {
            return Err(Error::Domain("membership arguments must not be NaN".into()));
        }
        let v = self.value(x, t);
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::Domain(format!(
                "membership value {v} of {} lies outside [0,1]",
                self.name()
            )));
        }
        Ok(v)
    }

    /// Both sides of the scalar axiom: `(N(cx, t), N(x, t/φ(c)))`.
    pub fn scalar_rescale_identity(&self, x: &[f64], t: f64, c: f64) -> Result<(f64, f64)> {
        if !(t > 0.0) {
            return Err(Error::Domain(format!("t must be positive, got {t}")));
        }
        let phi_c = self.phi.eval(c)?;
        if phi_c == 0.0 {
            return Err(Error::Domain(format!(
                "phi({c}) = 0: the scalar axiom excludes this case"
            )));
        }
        let cx: Vec<f64> = x.iter().map(|v| c * v).collect();
        Ok((self.membership(&cx, t)?, self.membership(x, t / phi_c)?))
    }

    pub fn classify_reduction(&self) -> Classification {
        if self.k == 1.0 && self.phi.is_abs() {
            Classification::BsFuzzyNorm
        } else {
            Classification::StrictPhiBNorm
        }
    }
}

pub fn membership(norm: &FuzzyNormSpec, x: &[f64], t: f64) -> Result<f64> {
    norm.membership(x, t)
}

pub fn scalar_rescale_identity(norm: &FuzzyNormSpec, x: &[f64], t: f64, c: f64) -> Result<(f64, f64)> {
    norm.scalar_rescale_identity(x, t, c)
}

pub fn classify_reduction(norm: &FuzzyNormSpec) -> Classification {
    norm.classify_reduction()
}

/// One of the two worked example norms with `K = 2^p` and `φ = |·|^p`.
///
/// Without an explicit t-norm the rational kind uses `min` and the exponential
/// kind uses the product, matching the t-norm each example is proved with.
pub fn make_example_norm(kind: ExampleKind, p: f64, base: CrispNorm, tnorm: Option<TNorm>) -> Result<FuzzyNormSpec> {
    check_p(p).map_err(|e| match e {
        Error::InvalidSpec(m) => Error::Domain(m),
        other => other,
    })?;
    let (kind, default_tnorm) = match kind {
        ExampleKind::Rational => (NormKind::Rational { p }, TNorm::Minimum),
        ExampleKind::Exponential => (NormKind::Exponential { p }, TNorm::Product),
    };
    FuzzyNormSpec::new(
        kind,
        2f64.powf(p),
        PhiSpec::AbsPower(p),
        tnorm.unwrap_or(default_tnorm),
        base,
    )
}
