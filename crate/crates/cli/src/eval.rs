//! `svf eval`: one quantity, one method, one parameter file.

use clap::ValueEnum;
use serde::Serialize;
use svf_core::closed_forms::{
    beta, gdw_determinant, gdw_subset_sum, trapezoid_factorized, triangular_factorized, z11_explicit,
};
use svf_core::contraction::{gdw_contract, trapezoid_value, triangular_contract};
use svf_core::efp::{efp_components, efp_determinant, gamma, EfpParams};
use svf_core::{BoundaryVector, ModelParams, Rational, Side};

use crate::params::ParamFile;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    /// Triangular partition function Z_n(u)
    Triangular,
    /// Rectangle with generalized domain-wall boundary Z_{m,n}(u | v)
    Gdw,
    /// Trapezoid partition function T_{n,m}(v), needs `split`
    Trapezoid,
    /// Emptiness formation probability P(m), needs `split`
    Efp,
    /// Single-vertex rectangle Z_{1,1}(u | v)
    Z11,
    Beta,
    Gamma,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Direct lattice contraction from the R-matrix
    Contraction,
    /// Product formula (or the explicit expansion for z11, beta, gamma)
    Factorized,
    SubsetSum,
    Determinant,
    /// Emptiness probability assembled from contracted partition functions
    Components,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Contraction => "contraction",
            Method::Factorized => "factorized",
            Method::SubsetSum => "subset-sum",
            Method::Determinant => "determinant",
            Method::Components => "components",
        }
    }
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Triangular => "triangular",
            Quantity::Gdw => "gdw",
            Quantity::Trapezoid => "trapezoid",
            Quantity::Efp => "efp",
            Quantity::Z11 => "z11",
            Quantity::Beta => "beta",
            Quantity::Gamma => "gamma",
        }
    }

    /// Supported methods; the first one is the default.
    pub fn methods(self) -> &'static [Method] {
        use Method::*;
        match self {
            Quantity::Triangular | Quantity::Trapezoid => &[Contraction, Factorized],
            Quantity::Gdw => &[Contraction, SubsetSum, Determinant],
            Quantity::Efp => &[Components, Determinant],
            Quantity::Z11 => &[Factorized, Contraction, SubsetSum, Determinant],
            Quantity::Beta | Quantity::Gamma => &[Factorized],
        }
    }

    pub fn resolve_method(self, method: Option<Method>) -> Result<Method, CliError> {
        let supported = self.methods();
        match method {
            None => Ok(supported[0]),
            Some(m) if supported.contains(&m) => Ok(m),
            Some(m) => {
                let names: Vec<_> = supported.iter().map(|m| m.name()).collect();
                Err(CliError::Input(format!(
                    "method {} is not available for {}; choose one of: {}",
                    m.name(),
                    self.name(),
                    names.join(", ")
                )))
            }
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EvalResult<'a> {
    pub quantity: Quantity,
    pub method: Method,
    pub value: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub float: Option<String>,
    pub params: &'a ParamFile,
}

pub fn evaluate(quantity: Quantity, method: Method, p: &ParamFile) -> Result<Rational, CliError> {
    let value = match quantity {
        Quantity::Triangular => {
            let (e, s) = (p.vector(Side::East)?, p.vector(Side::South)?);
            match method {
                Method::Factorized => triangular_factorized(&p.u, &p.c, &e, &s)?,
                _ => triangular_contract(&p.u, &p.c, &e, &s)?,
            }
        }
        Quantity::Gdw => {
            let params = ModelParams::new(p.c.clone(), p.u.clone(), p.v.clone(), p.all_vectors()?)?;
            match method {
                Method::SubsetSum => gdw_subset_sum(&params)?,
                Method::Determinant => gdw_determinant(&params)?,
                _ => gdw_contract(&params)?,
            }
        }
        Quantity::Trapezoid => {
            let (n, m) = p.split()?;
            let vecs = p.vectors_with_east(p.vector(Side::South)?)?;
            match method {
                Method::Factorized => trapezoid_factorized(&p.v, n, m, &p.c, &vecs)?,
                _ => trapezoid_value(&p.v, n, m, &p.c, &vecs)?,
            }
        }
        Quantity::Efp => {
            let (n, m) = p.split()?;
            let vecs = p.vectors_with_east(BoundaryVector::up(Side::East))?;
            let params = EfpParams::new(n, m, p.v.clone(), p.c.clone(), vecs)?;
            match method {
                Method::Determinant => efp_determinant(&params)?,
                _ => efp_components(&params)?,
            }
        }
        Quantity::Z11 => {
            if p.u.len() != 1 || p.v.len() != 1 {
                return Err(CliError::Input(format!(
                    "z11 needs exactly one u and one v, found {} and {}",
                    p.u.len(),
                    p.v.len()
                )));
            }
            let vecs = p.all_vectors()?;
            if method == Method::Factorized {
                z11_explicit(&p.u[0], &p.v[0], &p.c, &vecs)?
            } else {
                return evaluate(Quantity::Gdw, method, p);
            }
        }
        Quantity::Beta => beta(&p.all_vectors()?)?,
        Quantity::Gamma => gamma(&p.vectors_with_east(BoundaryVector::up(Side::East))?)?,
    };
    Ok(value)
}
