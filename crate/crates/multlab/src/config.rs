//! JSON run configuration: named systems, ideals, cycles and audit blocks,
//! plus global seed, precision and output directory. Cross-references are
//! resolved at load time; unresolved names are a configuration error.

use num::BigRational;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use crate::bipoly::{AffinePoly, BiPoly};
use crate::error::{Error, Result};
use crate::exactnum::{Coeff, Field, PowerSeries};
use crate::idealkit::IdealHandle;
use crate::parser::{parse_affine, parse_bipoly, parse_zform};
use crate::projgeo::{ProjPoint, TransferenceCertificate, ZeroCycle};
use crate::systems::{solve_mahler, solve_ode, DifferentialSystem, MahlerSystem};

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_PREC: usize = 64;

pub fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim())
        .map_err(|e| Error::Config(format!("bad rational `{s}`: {e}")))
}

fn parse_coeff(field: Field, s: &str) -> Result<Coeff> {
    let r = parse_rational(s)?;
    Coeff::from_ratio(field, r.numer(), r.denom())
}

fn series_from_strings(field: Field, coeffs: &[String], prec: usize) -> Result<PowerSeries> {
    let mut v = Vec::with_capacity(prec);
    for s in coeffs.iter().take(prec) {
        v.push(parse_coeff(field, s)?);
    }
    v.resize(prec, Coeff::zero(field));
    Ok(PowerSeries::new(field, v))
}

// ---------------------------------------------------------------------------
// Raw (serde) layer
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    prec: Option<usize>,
    #[serde(default)]
    out: Option<String>,
    /// Prime characteristic; omitted means Q.
    #[serde(default)]
    characteristic: Option<u64>,
    #[serde(default)]
    systems: BTreeMap<String, RawSystem>,
    #[serde(default)]
    ideals: BTreeMap<String, RawIdeal>,
    #[serde(default)]
    cycles: BTreeMap<String, RawCycle>,
    #[serde(default)]
    audits: BTreeMap<String, RawAudit>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawSystem {
    Differential {
        n: usize,
        /// A0 .. An in the affine syntax (z, X1 .. Xn).
        a: Vec<String>,
        /// Initial values f_i(0).
        initial: Vec<String>,
    },
    Mahler {
        n: usize,
        a0p: String,
        a1p: String,
        /// A0 .. An in the bigraded syntax.
        a: Vec<String>,
        /// Initial coefficient segments of every f_i; defaults to one zero
        /// coefficient each.
        #[serde(default)]
        seed_coeffs: Vec<Vec<String>>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIdeal {
    n: usize,
    generators: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCycle {
    n: usize,
    degree: usize,
    height: usize,
    points: Vec<RawPoint>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoint {
    /// n + 1 coordinate series, each a list of rational coefficients.
    coords: Vec<Vec<String>>,
    #[serde(default = "one")]
    mult: u32,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAudit {
    system: String,
    m_max: usize,
    n_max: usize,
    #[serde(default)]
    prec: Option<usize>,
}

/// Stand-alone transference certificate file.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCertificate {
    n: usize,
    /// The form P as a z-form (z-degree homogenized into the X'-block).
    p: String,
    c: String,
    mu: String,
    nu0: String,
    nu1: String,
    /// The functions f_1 .. f_n as coefficient lists.
    f: Vec<Vec<String>>,
    cycle: RawCycle,
    #[serde(default)]
    prec: Option<usize>,
    #[serde(default)]
    characteristic: Option<u64>,
}

// ---------------------------------------------------------------------------
// Resolved layer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub enum SystemDef {
    Differential(DifferentialSystem),
    Mahler {
        sys: MahlerSystem,
        seed_coeffs: Vec<Vec<Coeff>>,
    },
}

impl SystemDef {
    pub fn n(&self) -> usize {
        match self {
            SystemDef::Differential(s) => s.n,
            SystemDef::Mahler { sys, .. } => sys.n,
        }
    }

    /// Solve to the requested precision.
    pub fn solve(&self, prec: usize) -> Result<Vec<PowerSeries>> {
        match self {
            SystemDef::Differential(s) => solve_ode(s, prec),
            SystemDef::Mahler { sys, seed_coeffs } => solve_mahler(sys, seed_coeffs, prec),
        }
    }
}

#[derive(Debug, Clone)]
pub struct AuditDef {
    pub system: String,
    pub m_max: usize,
    pub n_max: usize,
    pub prec: Option<usize>,
}

#[derive(Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub prec: usize,
    pub out: PathBuf,
    pub field: Field,
    pub systems: BTreeMap<String, SystemDef>,
    pub ideals: BTreeMap<String, IdealHandle>,
    pub cycles: BTreeMap<String, ZeroCycle>,
    pub audits: BTreeMap<String, AuditDef>,
}

fn resolve_cycle(raw: &RawCycle, field: Field, prec: usize) -> Result<ZeroCycle> {
    let mut points = Vec::with_capacity(raw.points.len());
    for p in &raw.points {
        if p.coords.len() != raw.n + 1 {
            return Err(Error::Config(format!(
                "cycle point needs {} coordinates, got {}",
                raw.n + 1,
                p.coords.len()
            )));
        }
        let coords: Vec<PowerSeries> = p
            .coords
            .iter()
            .map(|c| series_from_strings(field, c, prec))
            .collect::<Result<_>>()?;
        points.push((ProjPoint::Projective(coords), p.mult));
    }
    Ok(ZeroCycle {
        points,
        degree: raw.degree,
        height: raw.height,
    })
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<RunConfig> {
        let raw: RawConfig = serde_json::from_str(text)?;
        let field = match raw.characteristic {
            Some(p) => Field::fp(p)?,
            None => Field::Q,
        };
        let prec = raw.prec.unwrap_or(DEFAULT_PREC);
        if prec == 0 {
            return Err(Error::Config("prec must be positive".into()));
        }

        let mut systems = BTreeMap::new();
        for (name, rs) in &raw.systems {
            let def = match rs {
                RawSystem::Differential { n, a, initial } => {
                    let polys: Vec<AffinePoly> = a
                        .iter()
                        .map(|s| parse_affine(s, *n, field))
                        .collect::<Result<_>>()?;
                    let init: Vec<Coeff> = initial
                        .iter()
                        .map(|s| parse_coeff(field, s))
                        .collect::<Result<_>>()?;
                    SystemDef::Differential(DifferentialSystem::new(*n, polys, init)?)
                }
                RawSystem::Mahler {
                    n,
                    a0p,
                    a1p,
                    a,
                    seed_coeffs,
                } => {
                    let polys: Vec<BiPoly> = a
                        .iter()
                        .map(|s| parse_bipoly(s, *n, field))
                        .collect::<Result<_>>()?;
                    let sys = MahlerSystem::new(
                        *n,
                        parse_bipoly(a0p, *n, field)?,
                        parse_bipoly(a1p, *n, field)?,
                        polys,
                    )?;
                    let seeds: Vec<Vec<Coeff>> = if seed_coeffs.is_empty() {
                        vec![vec![Coeff::zero(field)]; *n]
                    } else {
                        seed_coeffs
                            .iter()
                            .map(|row| row.iter().map(|s| parse_coeff(field, s)).collect())
                            .collect::<Result<_>>()?
                    };
                    SystemDef::Mahler {
                        sys,
                        seed_coeffs: seeds,
                    }
                }
            };
            systems.insert(name.clone(), def);
        }

        let mut ideals = BTreeMap::new();
        for (name, ri) in &raw.ideals {
            let gens: Vec<BiPoly> = ri
                .generators
                .iter()
                .map(|s| parse_zform(s, ri.n, field))
                .collect::<Result<_>>()?;
            ideals.insert(name.clone(), IdealHandle::new(ri.n, field, gens));
        }

        let mut cycles = BTreeMap::new();
        for (name, rc) in &raw.cycles {
            cycles.insert(name.clone(), resolve_cycle(rc, field, prec)?);
        }

        let mut audits = BTreeMap::new();
        for (name, ra) in &raw.audits {
            if !systems.contains_key(&ra.system) {
                return Err(Error::Unresolved(format!(
                    "audit `{name}` references unknown system `{}`",
                    ra.system
                )));
            }
            audits.insert(
                name.clone(),
                AuditDef {
                    system: ra.system.clone(),
                    m_max: ra.m_max,
                    n_max: ra.n_max,
                    prec: ra.prec,
                },
            );
        }

        Ok(RunConfig {
            seed: raw.seed.unwrap_or(DEFAULT_SEED),
            prec,
            out: PathBuf::from(raw.out.unwrap_or_else(|| ".".into())),
            field,
            systems,
            ideals,
            cycles,
            audits,
        })
    }

    pub fn load(path: &std::path::Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)?;
        RunConfig::from_json(&text)
    }

    pub fn system(&self, name: &str) -> Result<&SystemDef> {
        self.systems
            .get(name)
            .ok_or_else(|| Error::ParamDomain(format!("unknown system `{name}`")))
    }

    pub fn ideal(&self, name: &str) -> Result<&IdealHandle> {
        self.ideals
            .get(name)
            .ok_or_else(|| Error::ParamDomain(format!("unknown ideal `{name}`")))
    }

    pub fn audit(&self, name: &str) -> Result<&AuditDef> {
        self.audits
            .get(name)
            .ok_or_else(|| Error::ParamDomain(format!("unknown audit block `{name}`")))
    }
}

/// Parse a transference certificate file, returning the certificate and the
/// functions it certifies.
pub fn load_certificate(text: &str) -> Result<(TransferenceCertificate, Vec<PowerSeries>)> {
    let raw: RawCertificate = serde_json::from_str(text)?;
    let field = match raw.characteristic {
        Some(p) => Field::fp(p)?,
        None => Field::Q,
    };
    let prec = raw.prec.unwrap_or(DEFAULT_PREC);
    if prec == 0 {
        return Err(Error::Config("prec must be positive".into()));
    }
    if raw.f.len() != raw.n {
        return Err(Error::Config(format!(
            "certificate supplies {} functions, n = {}",
            raw.f.len(),
            raw.n
        )));
    }
    if raw.cycle.n != raw.n {
        return Err(Error::Config("cycle dimension differs from n".into()));
    }
    let f: Vec<PowerSeries> = raw
        .f
        .iter()
        .map(|c| series_from_strings(field, c, prec))
        .collect::<Result<_>>()?;
    let cert = TransferenceCertificate {
        n: raw.n,
        p: parse_zform(&raw.p, raw.n, field)?,
        c: parse_rational(&raw.c)?,
        mu: parse_rational(&raw.mu)?,
        nu0: parse_rational(&raw.nu0)?,
        nu1: parse_rational(&raw.nu1)?,
        z: resolve_cycle(&raw.cycle, field, prec)?,
    };
    Ok((cert, f))
}
