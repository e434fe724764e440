//! Parameter recovery: bring a classified matrix to the normal form of its
//! family, read the parameters off, and return a move certifying the match.

use serde::{Deserialize, Serialize};

use crate::cancel::locate_dita;
use crate::equivalence::{dephase_with_move, invert, EquivalenceMove};
use crate::error::{HadError, Result};
use crate::families::{d6, f6t, h13, x6_unchecked, CubeRoot, FourierTParams, Relation, X6Params};
use crate::matrix::CHMatrix;
use crate::patterns::{all_matchings, classify, MinusOnePattern};
use crate::tolerance::Tolerances;
use crate::unimod::UnimodEntry;

/// Entrywise agreement required between a rearranged input and a family
/// member before the rearrangement is accepted.
const MATCH_EPS: f64 = 1e-7;

/// `(beta, gamma, epsilon, phi)` for each cube root `beta` of
/// `-d / (a b c^2)`. All three give the same matrix `h13(a, b, c, d)`.
pub fn recover_x6(
    a: UnimodEntry,
    b: UnimodEntry,
    c: UnimodEntry,
    d: UnimodEntry,
    tol: &Tolerances,
) -> Result<Vec<X6Params>> {
    let args = [a, b, c, d].map(UnimodEntry::value);
    for rel in [Relation::H33, Relation::H33Conj] {
        let residual = rel.eval(&args)?.norm();
        if residual > tol.eps_orth {
            return Err(HadError::RelationViolation {
                relation: rel.name().into(),
                residual,
            });
        }
    }
    let cube = -(d / (a * b * c * c));
    Ok(cube
        .cube_roots()
        .into_iter()
        .map(|beta| {
            let b2 = beta * beta;
            X6Params {
                beta,
                gamma: -(b * c / d * b2),
                epsilon: -(c * beta),
                phi: a * c * c / d * b2,
            }
        })
        .collect())
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(k);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Move placing old row `rows[i]` at position `i`, likewise for columns.
fn arrangement(rows: &[usize], cols: &[usize]) -> EquivalenceMove {
    EquivalenceMove::permutation(invert(rows), invert(cols)).expect("orders are permutations")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DitaParams {
    pub c: UnimodEntry,
}

/// A family member equivalent to the input, with the move taking the input
/// onto it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Recovery {
    F6t {
        params: FourierTParams,
        certificate: EquivalenceMove,
    },
    X6 {
        params: X6Params,
        certificate: EquivalenceMove,
    },
    D6 {
        params: DitaParams,
        certificate: EquivalenceMove,
    },
}

impl Recovery {
    pub fn certificate(&self) -> &EquivalenceMove {
        match self {
            Recovery::F6t { certificate, .. }
            | Recovery::X6 { certificate, .. }
            | Recovery::D6 { certificate, .. } => certificate,
        }
    }

    /// The family member named by the recovered parameters.
    pub fn target(&self) -> CHMatrix {
        match self {
            Recovery::F6t { params, .. } => f6t(params),
            Recovery::X6 { params, .. } => x6_unchecked(params),
            Recovery::D6 { params, .. } => d6(params.c),
        }
    }

    /// Largest entrywise distance between the moved input and the target.
    pub fn certificate_residual(&self, m: &CHMatrix) -> Result<f64> {
        Ok(self.certificate().apply(m)?.max_entry_distance(&self.target()))
    }
}

/// Brings a matrix with a row of three `-1` entries to the form
/// `f6t(a, b)`: that row becomes row 1, the columns where it is `+1` come
/// first, and the remaining rows and columns are ordered until the matrix
/// agrees with `f6t(X[2][3], X[4][3])` for one of the two cube roots.
pub fn recover_f6t(m: &CHMatrix, tol: &Tolerances) -> Result<Recovery> {
    m.require_hadamard(tol)?;
    let n = m.rows();
    for pr in 0..n {
        for pc in 0..n {
            let (x, dmove) = dephase_with_move(m, pr, pc)?;
            for r in 1..n {
                let minus: Vec<usize> = (1..n).filter(|&j| x.get(r, j).is_minus_one(tol.eps_entry)).collect();
                let plus: Vec<usize> = (1..n).filter(|&j| x.get(r, j).is_one(tol.eps_entry)).collect();
                if minus.len() != 3 || plus.len() != 2 {
                    continue;
                }
                let rest: Vec<usize> = (1..n).filter(|&i| i != r).collect();
                for p in permutations(&plus) {
                    for q in permutations(&minus) {
                        let cols: Vec<usize> = [0].iter().chain(&p).chain(&q).copied().collect();
                        for o in permutations(&rest) {
                            let rows: Vec<usize> = [0, r].iter().chain(&o).copied().collect();
                            let y = x.select(&rows, &cols)?;
                            for w in [CubeRoot::Primary, CubeRoot::Conjugate] {
                                let params = FourierTParams {
                                    a: y.get(2, 3),
                                    b: y.get(4, 3),
                                    w,
                                };
                                if y.approx_eq(&f6t(&params), MATCH_EPS) {
                                    return Ok(Recovery::F6t {
                                        params,
                                        certificate: dmove.then(&arrangement(&rows, &cols)),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Err(HadError::PatternMissing(
        "no dephasing has a row with three -1 entries in transposed Fourier position".into(),
    ))
}

/// Brings a matrix with a 3-matching of `-1` entries to the form
/// `h13(a, b, c, d)` and converts it to 2-circulant parameters.
pub fn recover_x6_matrix(m: &CHMatrix, tol: &Tolerances) -> Result<Recovery> {
    m.require_hadamard(tol)?;
    let n = m.rows();
    let mut saw_matching = false;
    for pr in 0..n {
        for pc in 0..n {
            let (x, dmove) = dephase_with_move(m, pr, pc)?;
            let pat = MinusOnePattern::of(&x, tol.eps_entry)?;
            for mt in all_matchings(&pat, n, n) {
                saw_matching = true;
                let other_rows: Vec<usize> = (1..n).filter(|i| !mt.rows.contains(i)).collect();
                let other_cols: Vec<usize> = (1..n).filter(|j| !mt.cols.contains(j)).collect();
                for order in permutations(&[0, 1, 2]) {
                    for ro in permutations(&other_rows) {
                        for co in permutations(&other_cols) {
                            let rows: Vec<usize> =
                                [0].into_iter().chain(order.iter().map(|&k| mt.rows[k])).chain(ro.iter().copied()).collect();
                            let cols: Vec<usize> =
                                [0].into_iter().chain(order.iter().map(|&k| mt.cols[k])).chain(co.iter().copied()).collect();
                            let y = x.select(&rows, &cols)?;
                            let (a, b, c, d) = (y.get(1, 2), y.get(1, 3), y.get(2, 1), y.get(2, 3));
                            let Ok(target) = h13(a, b, c, d, tol) else {
                                continue;
                            };
                            if !y.approx_eq(&target, MATCH_EPS) {
                                continue;
                            }
                            let params = recover_x6(a, b, c, d, tol)?[0];
                            return Ok(Recovery::X6 {
                                params,
                                certificate: dmove.then(&arrangement(&rows, &cols)),
                            });
                        }
                    }
                }
            }
        }
    }
    Err(if saw_matching {
        HadError::RecoveryFailed("no arrangement reaches the h13 normal form".into())
    } else {
        HadError::PatternMissing("no three -1 entries in distinct rows and columns".into())
    })
}

/// Recovers family parameters for a classified matrix. Matrices with
/// pattern B that do not reach the `h13` form are matched against the Dita
/// family.
pub fn recover(m: &CHMatrix, tol: &Tolerances) -> Result<Recovery> {
    let report = classify(m, tol)?;
    if report.pattern_a.is_some() {
        return recover_f6t(m, tol);
    }
    if report.pattern_b.is_some() {
        return match recover_x6_matrix(m, tol) {
            Ok(r) => Ok(r),
            Err(e) => match locate_dita(m, tol)? {
                Some(loc) => Ok(Recovery::D6 {
                    params: DitaParams { c: loc.c },
                    certificate: loc.certificate,
                }),
                None => Err(e),
            },
        };
    }
    Err(HadError::PatternMissing("neither -1 pattern is present".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{h13_unchecked, sample_x6, x6};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn recover_x6_example() {
        let i = UnimodEntry::I;
        let out = recover_x6(i, -i, i, i, &tol()).unwrap();
        assert_eq!(out.len(), 3);
        let b0 = UnimodEntry::from_turns(1.0 / 12.0);
        let p = out.iter().find(|p| p.beta.is_close(b0, 1e-12)).expect("e^{i pi/6} root");
        let e3 = UnimodEntry::from_turns(1.0 / 6.0);
        assert!(p.gamma.is_close(i * e3, 1e-12));
        assert!(p.epsilon.is_close(-(i * b0), 1e-12));
        assert!(p.phi.is_close(-e3, 1e-12));
        let h = h13_unchecked(i, -i, i, i);
        for q in &out {
            assert!(q.implicit_residual() <= 1e-12);
            assert!(x6(q, &tol()).unwrap().approx_eq(&h, 1e-9));
        }
    }

    #[test]
    fn recover_x6_rejects_off_relation() {
        let one = UnimodEntry::ONE;
        assert!(matches!(
            recover_x6(one, one, one, one, &tol()),
            Err(HadError::RelationViolation { .. })
        ));
    }

    #[test]
    fn f6t_round_trip_scrambled() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let m = f6t(&FourierTParams::random(&mut rng));
        let s = EquivalenceMove::random(&mut rng, 6, 6).apply(&m).unwrap();
        let r = recover_f6t(&s, &tol()).unwrap();
        assert!(r.certificate_residual(&s).unwrap() <= 1e-8);
    }

    #[test]
    fn x6_round_trip_scrambled() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let m = x6(&sample_x6(&mut rng).unwrap(), &tol()).unwrap();
        let s = EquivalenceMove::random(&mut rng, 6, 6).apply(&m).unwrap();
        let r = recover(&s, &tol()).unwrap();
        assert!(matches!(r, Recovery::X6 { .. }));
        assert!(r.certificate_residual(&s).unwrap() <= 1e-8);
    }

    #[test]
    fn d6_recovers() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let m = d6(UnimodEntry::random(&mut rng));
        let s = EquivalenceMove::random(&mut rng, 6, 6).apply(&m).unwrap();
        let r = recover(&s, &tol()).unwrap();
        assert!(r.certificate_residual(&s).unwrap() <= 1e-8);
    }
}
