use std::fmt::Write as _;
use std::path::Path;

use anyhow::anyhow;
use hadlab_core::families::{sample_x6, x6};
use hadlab_core::haagerup::{fingerprints_differ, haagerup_fingerprint, haagerup_scan};
use hadlab_core::json::matrix_from_json;
use hadlab_core::mub::{audit_triplet, basis_from_json, Basis};
use hadlab_core::patterns::{classify as classify_matrix, classify_all_pivots, ClassificationReport};
use hadlab_core::recover::recover as recover_matrix;
use hadlab_core::{are_equivalent, CHMatrix};
use hadlab_poly::{witness_check_l62, witness_check_p63};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::params::{generate, Family};
use crate::{Failure, Format, Identity, Outcome, RunConfig};

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(anyhow!("{}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> Result<CHMatrix, Failure> {
    matrix_from_json(&read(path)?).map_err(|e| Failure::Input(anyhow!("{}: {e}", path.display())))
}

fn load_basis(path: &Path) -> Result<Basis, Failure> {
    basis_from_json(&read(path)?).map_err(|e| {
        let f = Failure::from(e);
        match f {
            Failure::Input(e) => Failure::Input(anyhow!("{}: {e:#}", path.display())),
            Failure::Domain(e) => Failure::Input(anyhow!("{}: {e:#}", path.display())),
        }
    })
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn render<T: Serialize>(cfg: &RunConfig, v: &T, text: impl FnOnce() -> String) -> String {
    match cfg.format {
        Format::Json => to_json(v),
        Format::Text => text(),
    }
}

fn ok(text: String) -> Result<Outcome, Failure> {
    Ok(Outcome { text, ok: true })
}

fn rng(cfg: &RunConfig) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed)
}

pub fn gen(cfg: &RunConfig, family: Family, params: Option<&str>) -> Result<Outcome, Failure> {
    let m = generate(family, params, &mut rng(cfg), &cfg.tol)?;
    ok(render(cfg, &m, || m.to_string()))
}

#[derive(Serialize)]
struct Sample {
    params: Value,
    matrix: CHMatrix,
}

pub fn sample(cfg: &RunConfig, family: Family, count: usize) -> Result<Outcome, Failure> {
    if family != Family::X6 {
        return Err(Failure::Input(anyhow!("sample supports --family x6 only")));
    }
    let mut rng = rng(cfg);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let p = sample_x6(&mut rng)?;
        out.push(Sample {
            params: serde_json::to_value(p).expect("params serialize"),
            matrix: x6(&p, &cfg.tol)?,
        });
    }
    ok(render(cfg, &out, || {
        out.iter()
            .map(|s| format!("{}\n{}", s.params, s.matrix))
            .collect::<Vec<_>>()
            .join("\n")
    }))
}

fn classification_text(r: &ClassificationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "verdict: {:?}", r.verdict);
    let _ = writeln!(s, "pattern A row: {:?}", r.pattern_a);
    let _ = writeln!(s, "pattern B: {:?}", r.pattern_b.as_ref().map(|m| (m.rows, m.cols)));
    let _ = writeln!(s, "regular: {}", r.regular);
    let _ = writeln!(s, "triangle: {:?}", r.dita_triangle);
    let _ = writeln!(s, "H2-reducible: {}", r.karlsson.is_some());
    let _ = write!(s, "hadamard residual: {:.3e}", r.hadamard_residual);
    if r.routing_conflict {
        s.push_str("\nwarning: three -1 columns but no pattern; tolerances may be too tight");
    }
    s
}

pub fn classify(cfg: &RunConfig, file: &Path, all_pivots: bool) -> Result<Outcome, Failure> {
    let m = load_matrix(file)?;
    if all_pivots {
        let r = classify_all_pivots(&m, &cfg.tol)?;
        if !r.disagreements.is_empty() {
            eprintln!(
                "warning: {} pivot(s) disagree with the (0, 0) verdict",
                r.disagreements.len()
            );
        }
        ok(render(cfg, &r, || {
            let mut s = classification_text(&r.report);
            for d in &r.disagreements {
                let _ = write!(s, "\npivot {:?}: {:?}", d.pivot, d.verdict);
            }
            s
        }))
    } else {
        let r = classify_matrix(&m, &cfg.tol)?;
        ok(render(cfg, &r, || classification_text(&r)))
    }
}

pub fn verify(cfg: &RunConfig, file: &Path) -> Result<Outcome, Failure> {
    let m = load_matrix(file)?;
    let (hadamard, residual) = m.is_hadamard(&cfg.tol)?;
    let scan = haagerup_scan(&m);
    let fingerprint = haagerup_fingerprint(&m);
    let report = json!({
        "hadamard": hadamard,
        "hadamard_residual": residual,
        "haagerup_max": scan.max_abs_bracket,
        "argmax": scan.argmax,
        "fingerprint_size": fingerprint.len(),
    });
    let text = render(cfg, &report, || {
        format!(
            "hadamard: {hadamard} (residual {residual:.3e})\nhaagerup max: {:.3e} over {} brackets\nfingerprint size: {}",
            scan.max_abs_bracket,
            scan.evaluated,
            fingerprint.len()
        )
    });
    Ok(Outcome { text, ok: hadamard })
}

pub fn equiv(cfg: &RunConfig, a: &Path, b: &Path) -> Result<Outcome, Failure> {
    let (ma, mb) = (load_matrix(a)?, load_matrix(b)?);
    let differ = fingerprints_differ(&ma, &mb);
    let witness = if differ {
        ma.require_hadamard(&cfg.tol)?;
        mb.require_hadamard(&cfg.tol)?;
        None
    } else {
        are_equivalent(&ma, &mb, &cfg.tol)?
    };
    let report = json!({
        "equivalent": witness.is_some(),
        "witness": witness,
        "fingerprints_differ": differ,
    });
    ok(render(cfg, &report, || match &witness {
        Some(w) => format!("equivalent\nrow_perm {:?}\ncol_perm {:?}", w.row_perm, w.col_perm),
        None if differ => "not equivalent (Haagerup fingerprints differ)".into(),
        None => "not equivalent".into(),
    }))
}

pub fn recover(cfg: &RunConfig, file: &Path) -> Result<Outcome, Failure> {
    let m = load_matrix(file)?;
    let r = recover_matrix(&m, &cfg.tol)?;
    let residual = r.certificate_residual(&m)?;
    let mut value = serde_json::to_value(&r).expect("recovery serializes");
    value["certificate_residual"] = json!(residual);
    ok(render(cfg, &value, || {
        format!(
            "family: {}\nparams: {}\ncertificate residual: {residual:.3e}",
            value["family"].as_str().unwrap_or("?"),
            value["params"]
        )
    }))
}

pub fn witness(cfg: &RunConfig, identity: Identity) -> Result<Outcome, Failure> {
    let (name, report) = match identity {
        Identity::L62 => ("l62", witness_check_l62()),
        Identity::P63 => ("p63", witness_check_p63()),
    };
    let report = report.map_err(|e| Failure::Domain(e.into()))?;
    let value = json!({
        "identity": name,
        "holds": report.holds,
        "lhs_terms": report.lhs.term_count(),
        "rhs_terms": report.rhs.term_count(),
        "residual": report.residual.to_string(),
    });
    let text = render(cfg, &value, || {
        if report.holds {
            format!(
                "IDENTITY HOLDS ({name}): lhs {} terms, rhs {} terms",
                report.lhs.term_count(),
                report.rhs.term_count()
            )
        } else {
            format!(
                "IDENTITY FAILS ({name}): residual has {} terms\n{}",
                report.residual.term_count(),
                report.residual
            )
        }
    });
    Ok(Outcome {
        text,
        ok: report.holds,
    })
}

pub fn mub_audit(cfg: &RunConfig, files: [&Path; 3]) -> Result<Outcome, Failure> {
    let [b0, b1, b2] = [load_basis(files[0])?, load_basis(files[1])?, load_basis(files[2])?];
    let report = audit_triplet([&b0, &b1, &b2], &cfg.tol);
    let all_unbiased = report.pairs.iter().all(|p| p.unbiased);
    let text = render(cfg, &report, || {
        let mut s = String::new();
        for p in &report.pairs {
            let verdict = p.classification.as_ref().map(|c| format!("{:?}", c.verdict));
            let _ = writeln!(
                s,
                "pair {:?}: unbiased {} (deviation {:.3e}), verdict {}",
                p.pair,
                p.unbiased,
                p.deviation,
                verdict.unwrap_or_else(|| "-".into())
            );
        }
        let _ = write!(s, "zauner compatible: {}", report.zauner_compatible);
        s
    });
    Ok(Outcome {
        text,
        ok: all_unbiased,
    })
}
