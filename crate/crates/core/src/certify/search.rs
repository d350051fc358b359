use std::f64::consts::FRAC_PI_2;

use super::{scan_infimum, CertificationResult, ScanSpec};
use crate::constants::B0;
use crate::distortion::Family;
use crate::error::{domain, Error, Result};

/// What is being certified: `D(F_k) > 1/2` for circumradii up to `b₀ − ε`,
/// or `D(F_k*) > 1/3` up to `π/2 − ε`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Half,
    Third,
}

impl Target {
    /// From a family name: `fk` or `fkstar`.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "fk" => Ok(Target::Half),
            "fkstar" => Ok(Target::Third),
            _ => Err(Error::Input(format!("certify takes fk or fkstar, not {s}"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Target::Half => "fk",
            Target::Third => "fkstar",
        }
    }

    pub fn family(&self, k: f64) -> Family {
        match self {
            Target::Half => Family::Fk(k),
            Target::Third => Family::FkStar(k),
        }
    }

    pub fn threshold(&self) -> f64 {
        match self {
            Target::Half => 0.5,
            Target::Third => 1.0 / 3.0,
        }
    }

    pub fn radius_cap(&self, eps: f64) -> Result<f64> {
        let top = match self {
            Target::Half => B0,
            Target::Third => FRAC_PI_2,
        };
        if !(eps > 0.0 && eps < top) {
            return Err(domain(
                "ε",
                eps,
                if *self == Target::Half {
                    "(0, b₀)"
                } else {
                    "(0, π/2)"
                },
            ));
        }
        Ok(top - eps)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KSearch {
    pub target: Target,
    pub eps: f64,
    /// Smallest margin accepted as a certificate.
    pub delta_floor: f64,
    pub k_cap: f64,
    /// Grid settings; family and radius cap are overwritten.
    pub grid: ScanSpec,
}

impl KSearch {
    pub fn new(target: Target, eps: f64) -> Self {
        Self {
            target,
            eps,
            delta_floor: 1e-4,
            k_cap: 65536.0,
            grid: ScanSpec::new(Family::Fk(1.0), 1.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certified {
    pub k: f64,
    pub delta_emp: f64,
    pub result: CertificationResult,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KSearchOutcome {
    pub target: Target,
    pub eps: f64,
    /// `(k, margin)` for every scan run.
    pub tried: Vec<(f64, f64)>,
    pub certified: Option<Certified>,
    /// The `k → ∞` limit `√chd` scanned over the same radii, for the
    /// one-half target; it must stay above `1/2` for every radius below
    /// `b₀`.
    pub companion: Option<CertificationResult>,
}

impl KSearchOutcome {
    /// A sample contradicting a bound that must hold for every `k`.
    pub fn violation(&self) -> bool {
        self.companion
            .as_ref()
            .is_some_and(|c| c.infimum <= c.threshold || c.violations > 0)
    }
}

/// Double `k` from 1 until the scan margin reaches `delta_floor`.
pub fn k_search(cfg: &KSearch) -> Result<KSearchOutcome> {
    let cap = cfg.target.radius_cap(cfg.eps)?;
    if cfg.delta_floor.is_nan() || cfg.delta_floor <= 0.0 {
        return Err(domain("δ floor", cfg.delta_floor, "(0, ∞)"));
    }
    let spec = |family| ScanSpec {
        family,
        r_max: cap,
        ..cfg.grid.clone()
    };
    let companion = match cfg.target {
        Target::Half => Some(scan_infimum(&spec(Family::Finf))?),
        Target::Third => None,
    };
    let mut tried = Vec::new();
    let mut k = 1.0;
    while k <= cfg.k_cap {
        let result = scan_infimum(&spec(cfg.target.family(k)))?;
        tried.push((k, result.margin));
        if result.margin >= cfg.delta_floor {
            return Ok(KSearchOutcome {
                target: cfg.target,
                eps: cfg.eps,
                tried,
                certified: Some(Certified {
                    k,
                    delta_emp: result.margin,
                    result,
                }),
                companion,
            });
        }
        k *= 2.0;
    }
    Ok(KSearchOutcome {
        target: cfg.target,
        eps: cfg.eps,
        tried,
        certified: None,
        companion,
    })
}
