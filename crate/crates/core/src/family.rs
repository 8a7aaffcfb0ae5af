//! Named state families and the parameters that sweeps and threshold
//! searches vary.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::state::{cts, from_params, sts, tss, ComplexAmplitude, GaussianState, StateParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Squeezed thermal state, real squeezing, optional displacement.
    Sts,
    /// Displaced (coherent) thermal state.
    Cts,
    /// Thermal squeezed state with the literal `diag(n_th + e^{2r}, n_th + e^{-2r})` covariance.
    Tss,
    /// Full `(beta, r, psi, n_th)` parametrization.
    Generic,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Sts, Family::Cts, Family::Tss, Family::Generic];

    /// Canonical parameters that determine a member of the family.
    pub fn parameters(&self) -> &'static [Param] {
        match self {
            Family::Sts => &[Param::Beta, Param::R, Param::NTh],
            Family::Cts => &[Param::Beta, Param::NTh],
            Family::Tss => &[Param::R, Param::NTh],
            Family::Generic => &[Param::Beta, Param::R, Param::Psi, Param::NTh],
        }
    }

    pub fn state(&self, p: &FamilyParams) -> Result<GaussianState> {
        match self {
            Family::Sts => sts(p.r, p.n_th, p.beta),
            Family::Cts => cts(p.beta, p.n_th),
            Family::Tss => tss(p.r, p.n_th),
            Family::Generic => from_params(&p.as_state_params()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Sts => "sts",
            Family::Cts => "cts",
            Family::Tss => "tss",
            Family::Generic => "generic",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown family `{s}` (expected sts, cts, tss or generic)"))
    }
}

/// A scalar that can be fixed or varied. `NSq` and `NCoh` are photon-number
/// aliases for `R` (`sinh^2 r`) and `Beta` (`|beta|^2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Param {
    R,
    Beta,
    NTh,
    Psi,
    NSq,
    NCoh,
}

impl Param {
    pub const ALL: [Param; 6] = [
        Param::R,
        Param::Beta,
        Param::NTh,
        Param::Psi,
        Param::NSq,
        Param::NCoh,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Param::R => "r",
            Param::Beta => "beta",
            Param::NTh => "n_th",
            Param::Psi => "psi",
            Param::NSq => "n_sq",
            Param::NCoh => "n_coh",
        }
    }

    pub fn is_photon_number(&self) -> bool {
        matches!(self, Param::NSq | Param::NCoh)
    }

    /// The canonical parameter this one sets.
    pub fn canonical(&self) -> Param {
        match self {
            Param::NSq => Param::R,
            Param::NCoh => Param::Beta,
            p => *p,
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let norm = s.replace('-', "_");
        Param::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(&norm))
            .ok_or_else(|| {
                format!("unknown parameter `{s}` (expected r, beta, n_th, psi, n_sq or n_coh)")
            })
    }
}

/// Parameter bindings shared by all families; unused fields are ignored.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FamilyParams {
    pub beta: ComplexAmplitude,
    pub r: f64,
    pub psi: f64,
    pub n_th: f64,
}

impl FamilyParams {
    pub fn as_state_params(&self) -> StateParams {
        StateParams::new(self.beta, self.r, self.psi, self.n_th)
    }

    pub fn get(&self, p: Param) -> f64 {
        match p {
            Param::R => self.r,
            Param::Beta => self.beta.re,
            Param::NTh => self.n_th,
            Param::Psi => self.psi,
            Param::NSq => self.r.sinh().powi(2),
            Param::NCoh => self.beta.norm_sqr(),
        }
    }

    /// Returns a copy with `p` set to `value`. `Beta` sets the real part of the
    /// amplitude; `NCoh` sets its modulus to `sqrt(value)` keeping the phase.
    pub fn with(&self, p: Param, value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::InvalidParameter {
                name: p.name(),
                value,
                reason: "must be finite",
            });
        }
        if matches!(p, Param::NSq | Param::NCoh) && value < 0.0 {
            return Err(Error::InvalidParameter {
                name: p.name(),
                value,
                reason: "photon numbers must be non-negative",
            });
        }
        let mut out = *self;
        match p {
            Param::R => out.r = value,
            Param::Beta => out.beta.re = value,
            Param::NTh => out.n_th = value,
            Param::Psi => out.psi = value,
            Param::NSq => out.r = value.sqrt().asinh(),
            Param::NCoh => {
                let phase = if self.beta.norm_sqr() > 0.0 {
                    self.beta.im.atan2(self.beta.re)
                } else {
                    0.0
                };
                out.beta = ComplexAmplitude::from_polar(value.sqrt(), phase);
            }
        }
        Ok(out)
    }
}
