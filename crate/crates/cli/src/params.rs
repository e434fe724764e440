//! `gen --params` decoding. Missing parameters are drawn from the seeded
//! generator.

use hadlab_core::families::{
    d6, f6t, h13, h_a, r1, r2, sample_x6, solve_implicit, w_example, x6, CubeRoot, FourierTParams, X6Params,
    X6Var,
};
use hadlab_core::json::EntryJson;
use hadlab_core::{CHMatrix, HadError, Tolerances, UnimodEntry};
use rand::Rng;
use serde::Deserialize;

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    F6t,
    X6,
    D6,
    Ha,
    R1,
    R2,
    W,
    H13,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    a: Option<EntryJson>,
    b: Option<EntryJson>,
    c: Option<EntryJson>,
    d: Option<EntryJson>,
    q: Option<EntryJson>,
    w: Option<CubeRoot>,
    beta: Option<EntryJson>,
    gamma: Option<EntryJson>,
    epsilon: Option<EntryJson>,
    phi: Option<EntryJson>,
}

fn entry(e: Option<EntryJson>) -> Result<Option<UnimodEntry>, Failure> {
    e.map(|e| e.to_unimod()).transpose().map_err(Failure::from)
}

fn or_random<R: Rng>(e: Option<EntryJson>, rng: &mut R) -> Result<UnimodEntry, Failure> {
    Ok(match entry(e)? {
        Some(u) => u,
        None => UnimodEntry::random(rng),
    })
}

fn x6_params<R: Rng>(raw: Raw, rng: &mut R, tol: &Tolerances) -> Result<X6Params, Failure> {
    let given = [
        (X6Var::Beta, entry(raw.beta)?),
        (X6Var::Gamma, entry(raw.gamma)?),
        (X6Var::Epsilon, entry(raw.epsilon)?),
        (X6Var::Phi, entry(raw.phi)?),
    ];
    let missing: Vec<X6Var> = given.iter().filter(|g| g.1.is_none()).map(|g| g.0).collect();
    match missing.len() {
        0 => {
            let g = |k: usize| given[k].1.expect("present");
            Ok(X6Params {
                beta: g(0),
                gamma: g(1),
                epsilon: g(2),
                phi: g(3),
            })
        }
        1 => {
            let base = given.iter().fold(
                X6Params {
                    beta: UnimodEntry::ONE,
                    gamma: UnimodEntry::ONE,
                    epsilon: UnimodEntry::ONE,
                    phi: UnimodEntry::ONE,
                },
                |p, (var, v)| p.with(*var, v.unwrap_or(UnimodEntry::ONE)),
            );
            let roots = solve_implicit(&base, missing[0]);
            let root = roots.first().ok_or_else(|| {
                Failure::Domain(anyhow::anyhow!(
                    "no unimodular value of {:?} satisfies the implicit equation",
                    missing[0]
                ))
            })?;
            Ok(base.with(missing[0], *root))
        }
        4 => Ok(sample_x6(rng)?),
        _ => Err(Failure::Input(anyhow::anyhow!(
            "x6 needs all four parameters, three of them, or none"
        ))),
    }
    .and_then(|p| {
        x6(&p, tol)?;
        Ok(p)
    })
}

/// Builds the requested matrix. `params` is a JSON object; unknown keys are
/// rejected.
pub fn generate<R: Rng>(family: Family, params: Option<&str>, rng: &mut R, tol: &Tolerances) -> Result<CHMatrix, Failure> {
    let raw: Raw = match params {
        Some(text) => serde_json::from_str(text)
            .map_err(|e| Failure::Input(anyhow::anyhow!("invalid --params: {e}")))?,
        None => Raw::default(),
    };
    let w = raw.w.unwrap_or_default();
    Ok(match family {
        Family::F6t => f6t(&FourierTParams {
            a: or_random(raw.a, rng)?,
            b: or_random(raw.b, rng)?,
            w,
        }),
        Family::X6 => x6(&x6_params(raw, rng, tol)?, tol)?,
        Family::D6 => d6(or_random(raw.c, rng)?),
        Family::Ha => h_a(or_random(raw.a, rng)?, w),
        Family::R1 => r1(or_random(raw.q, rng)?),
        Family::R2 => r2(or_random(raw.q, rng)?),
        Family::W => w_example(),
        Family::H13 => {
            let abcd = [entry(raw.a)?, entry(raw.b)?, entry(raw.c)?, entry(raw.d)?];
            match abcd {
                [Some(a), Some(b), Some(c), Some(d)] => h13(a, b, c, d, tol)?,
                [None, None, None, None] => {
                    let m = x6(&sample_x6(rng)?, tol)?;
                    h13(m.get(1, 2), m.get(1, 3), m.get(2, 1), m.get(2, 3), tol)?
                }
                _ => {
                    return Err(Failure::Input(anyhow::anyhow!(
                        "h13 needs all of a, b, c, d or none"
                    )))
                }
            }
        }
    })
}

impl From<HadError> for Failure {
    fn from(e: HadError) -> Self {
        if e.is_input_error() {
            Failure::Input(e.into())
        } else {
            Failure::Domain(e.into())
        }
    }
}
