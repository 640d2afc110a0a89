use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use super::modulus::{orlicz_modulus, Modulus};
use crate::error::{Error, Result};
use crate::norms::{luxemburg_norm, NormEngine, OrliczFn};
use crate::seqvec::{IndexSet, SparseVec};

/// Largest support whose subsets are all checked.
pub const MAX_STAR_SUPPORT: usize = 16;

/// Slack on every margin.
pub const STAR_MARGIN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsetMargin {
    pub subset: IndexSet,
    pub margin: f64,
}

/// `x` with its constants `c(x)`, `d(x)`, a modulus, and the margin
/// `‖P_A x‖ + c(x) ω(d(x) ‖R_A x‖∞) - ‖x‖` for every `A ⊆ supp x`.
#[derive(Debug, Clone, Serialize)]
pub struct StarCertificate {
    pub engine: String,
    pub x: SparseVec,
    pub norm: f64,
    pub c_x: f64,
    pub d_x: f64,
    #[serde(rename = "modulus")]
    pub modulus_id: String,
    #[serde(skip)]
    pub modulus: Modulus,
    pub margins: Vec<SubsetMargin>,
}

impl StarCertificate {
    pub fn is_valid(&self) -> bool {
        self.margins.iter().all(|m| m.margin >= -STAR_MARGIN_TOL)
    }

    pub fn min_margin(&self) -> Option<&SubsetMargin> {
        self.margins.iter().min_by(|a, b| a.margin.total_cmp(&b.margin))
    }

    pub fn failures(&self) -> impl Iterator<Item = &SubsetMargin> {
        self.margins.iter().filter(|m| m.margin < -STAR_MARGIN_TOL)
    }

    /// Columns `subset,margin`; subsets are written as `{i;j;..}`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["subset", "margin"]).map_err(|e| Error::Io(e.to_string()))?;
        for m in &self.margins {
            let set = m.subset.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(";");
            out.write_record([format!("{{{set}}}"), m.margin.to_string()]).map_err(|e| Error::Io(e.to_string()))?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Checks the decomposition inequality
/// `‖x‖ <= ‖P_A x‖ + c ω(d ‖R_A x‖∞)` on every subset of `supp x`.
///
/// For lattice-monotone engines the subsets of the support are all the
/// cases: `P_A x` and `R_A x` only see `A ∩ supp x`.
pub fn star_check(
    engine: &dyn NormEngine,
    x: &SparseVec,
    c_x: f64,
    d_x: f64,
    omega: &Modulus,
) -> Result<StarCertificate> {
    if x.len() > MAX_STAR_SUPPORT {
        return Err(Error::SupportTooLarge { size: x.len(), limit: MAX_STAR_SUPPORT });
    }
    if !(c_x > 0.0 && c_x.is_finite() && d_x > 0.0 && d_x.is_finite()) {
        return Err(Error::Precondition(format!("c(x) = {c_x} and d(x) = {d_x} must be positive and finite")));
    }
    let norm = engine.eval(x);
    let full = (1u64 << x.len()) - 1;
    let indices = x.indices();
    let margins = (0..=full)
        .into_par_iter()
        .map(|mask| {
            let p = x.project_mask(mask);
            let r = x.project_mask(full & !mask);
            let margin = engine.eval(&p) + c_x * omega.eval(d_x * r.sup_norm()) - norm;
            let subset = indices.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| i).collect();
            SubsetMargin { subset, margin }
        })
        .collect();
    Ok(StarCertificate {
        engine: engine.name(),
        x: x.clone(),
        norm,
        c_x,
        d_x,
        modulus_id: omega.id().to_string(),
        modulus: omega.clone(),
        margins,
    })
}

/// Constants for a vector of norm `norm_x` from those of its normalization:
/// `(‖x‖ c, d / ‖x‖)`.
pub fn star_rescale(c_unit: f64, d_unit: f64, norm_x: f64) -> Result<(f64, f64)> {
    if !(norm_x > 0.0) {
        return Err(Error::NonPositiveScale(norm_x));
    }
    Ok((norm_x * c_unit, d_unit / norm_x))
}

/// Decomposition constants together with the modulus they go with.
#[derive(Debug, Clone)]
pub struct StarConstants {
    pub c_x: f64,
    pub d_x: f64,
    pub modulus: Modulus,
}

/// `c = Σ_γ M(K |u(γ)|)` with `u = x/‖x‖`, `d = 1`, `ω` the tabulated
/// `sup_{τ<=t} M(τ)/M(Kτ)`, rescaled to `x`.
pub fn star_orlicz_certificate(m: &OrliczFn, x: &SparseVec) -> Result<StarConstants> {
    star_orlicz_certificate_with(m, x, orlicz_modulus(m))
}

/// [`star_orlicz_certificate`] with a precomputed [`orlicz_modulus`].
pub fn star_orlicz_certificate_with(m: &OrliczFn, x: &SparseVec, modulus: Modulus) -> Result<StarConstants> {
    if x.is_zero() {
        return Err(Error::Precondition("the zero vector has no certificate".into()));
    }
    let norm = luxemburg_norm(m, x)?;
    let k = m.k_growth();
    let c_unit: f64 = x.values().map(|v| m.eval(k * v.abs() / norm)).sum();
    let (c_x, d_x) = star_rescale(c_unit, 1.0, norm)?;
    Ok(StarConstants { c_x, d_x, modulus })
}

/// From a norming functional `f` with `f(x) = ‖x‖`: `c = Σ|f(e_γ)|`, `d = 1`,
/// `ω(t) = t`. When the engine knows its dual norm, `‖f‖* <= 1` is checked
/// as well.
pub fn star_summable_certificate(engine: &dyn NormEngine, f: &SparseVec, x: &SparseVec) -> Result<StarConstants> {
    let norm = engine.eval(x);
    let fx = f.dot(x);
    if (fx - norm).abs() > STAR_MARGIN_TOL * norm.max(1.0) {
        return Err(Error::Precondition(format!("functional gives f(x) = {fx}, but ‖x‖ = {norm}")));
    }
    if let Some(dual) = engine.dual_norm(f) {
        if dual > 1.0 + STAR_MARGIN_TOL {
            return Err(Error::Precondition(format!("functional has dual norm {dual} > 1")));
        }
    }
    let c_x = f.l1_norm();
    if !(c_x > 0.0) {
        return Err(Error::Precondition("the zero functional norms only the zero vector".into()));
    }
    Ok(StarConstants { c_x, d_x: 1.0, modulus: Modulus::Identity })
}
