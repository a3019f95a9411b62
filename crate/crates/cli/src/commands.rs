use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Subcommand;
use higher_currents::bps::{bps_extension, bps_fraction, charge_matrix, m_algebra_report_for, BpsOptions};
use higher_currents::clifford::build_majorana_rep;
use higher_currents::exact::Rational;
use higher_currents::plectic::{build_pois_dg, build_pois_infinity, format_field, hamiltonian_pairs, kks_cocycle, verify_linfty};
use higher_currents::serre::{h5_correction, hat_cohomology, verify_result, CohomologyRing, SpectralResult};
use higher_currents::superspace::{brane_scan, format_scan};
use higher_currents::truncation::{central_extension_certify, compare_truncations, format_presentation, truncate0};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::model::ModelFile;
use crate::CliError;

#[derive(Clone, Debug, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Closure of the WZW cocycle over a grid of dimensions and ranks.
    BraneScan {
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        d: Vec<usize>,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        p: Vec<usize>,
    },
    /// Higher Poisson L∞ algebra: bracket tables and the Jacobi identities.
    Pois {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 4)]
        arity: usize,
        /// Also check the KKS cocycle on the search space.
        #[arg(long)]
        kks: bool,
    },
    /// Degree-0 truncation, its central extension and the dg comparison.
    Truncate {
        #[arg(long)]
        model: PathBuf,
    },
    /// Brane-charge extension of the supertranslations.
    Bps {
        #[arg(long)]
        model: PathBuf,
        /// Overrides the rank in the model file.
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        potentials: bool,
        /// Momentum background `a:c,…` for a BPS fraction.
        #[arg(long)]
        momentum: Option<String>,
        /// Membrane background `a.b:c,…` for a BPS fraction.
        #[arg(long)]
        membrane: Option<String>,
    },
    /// Corrected charge groups from the two-row spectral sequence.
    Serre {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long, default_value = "0")]
        g4: String,
        #[arg(long, default_value_t = 5)]
        n: i64,
    },
    /// Gamma matrices and charge conjugation.
    Clifford {
        #[command(subcommand)]
        action: CliffordAction,
    },
    /// Recomputes a saved report and checks that it matches.
    Verify { report: PathBuf },
}

#[derive(Clone, Debug, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CliffordAction {
    Export {
        #[arg(long)]
        d: usize,
        #[arg(long, value_delimiter = ',', default_value = "1,2,5")]
        ranks: Vec<usize>,
    },
}

/// A command's outcome: JSON, a human-readable rendering, and whether every
/// certificate it carries checked out.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

pub fn run(cmd: &Command) -> Result<Report, CliError> {
    let (result, text, ok) = match cmd {
        Command::BraneScan { d, p } => {
            let rows = brane_scan(d, p);
            (serde_json::to_value(&rows)?, format_scan(&rows), true)
        }
        Command::Pois { model, arity, kks } => pois(&ModelFile::load(model)?, *arity, *kks)?,
        Command::Truncate { model } => truncate(&ModelFile::load(model)?)?,
        Command::Bps { model, p, potentials, momentum, membrane } => {
            bps(&ModelFile::load(model)?, *p, *potentials, momentum.as_deref(), membrane.as_deref())?
        }
        Command::Serre { ring, g4, n } => serre(ring, g4, *n)?,
        Command::Clifford { action: CliffordAction::Export { d, ranks } } => clifford(*d, ranks)?,
        Command::Verify { report } => return verify(report),
    };
    Ok(Report { json: json!({ "command": cmd, "result": result }), text, ok })
}

fn pois(file: &ModelFile, arity: usize, kks: bool) -> Result<(Value, String, bool), CliError> {
    if arity < 2 {
        return Err(CliError::Config("arity limit must be at least 2".into()));
    }
    let (s, space) = file.plectic()?;
    let alg = build_pois_infinity(&s, &space)?;
    let report = verify_linfty(&alg, arity)?;
    let brackets = alg.bracket_table(arity)?;
    let nonzero_ternary = brackets.iter().filter(|b| b.arity == 3).count();
    let mut ok = report.passed;
    let kks_report = if kks {
        // the cocycle lives on Hamiltonian fields only
        let fields: Vec<_> = hamiltonian_pairs(&s, &space)?
            .section()
            .into_iter()
            .map(|p| (format_field(s.model(), &p.v), p.v))
            .collect();
        let r = kks_cocycle(&s, &fields, arity)?;
        ok &= r.passed;
        Some(r)
    } else {
        None
    };
    let mut text = format!("{}: p = {}, arity ≤ {arity}\n", file.name, s.p());
    for c in &report.per_arity {
        let _ = writeln!(text, "  arity {}: {} checked, {} nontrivial, {} failed", c.arity, c.checked, c.nontrivial, c.failed);
    }
    let _ = writeln!(text, "  nonzero ternary brackets: {nonzero_ternary}");
    let _ = writeln!(text, "  L∞ identities: {}", if report.passed { "pass" } else { "FAIL" });
    if let Some(r) = &kks_report {
        let _ = writeln!(text, "  KKS morphism: {}", if r.passed { "pass" } else { "FAIL" });
    }
    let value = json!({
        "model": file.name,
        "p": s.p(),
        "unary": alg.unary_table()?,
        "brackets": brackets,
        "verify": report,
        "kks": kks_report,
    });
    Ok((value, text, ok))
}

fn truncate(file: &ModelFile) -> Result<(Value, String, bool), CliError> {
    let (s, space) = file.plectic()?;
    let cert = central_extension_certify(&s, &space)?;
    let inf = build_pois_infinity(&s, &space)?;
    let t = truncate0(&inf)?;
    let agreement = match s.theta() {
        Some(_) => Some(compare_truncations(&inf, &build_pois_dg(&s, &space)?)?),
        None => None,
    };
    let ok = cert.exact && cert.central && agreement.as_ref().is_none_or(|a| a.isomorphic);
    let mut text = format!(
        "{}: τ₀ has dimension {}, {} central charge(s) {:?}\n",
        file.name, cert.tau0_dim, cert.charges, cert.charge_labels
    );
    text.push_str(&format_presentation(&t.presentation));
    let _ = writeln!(text, "extension exact: {}, charges central: {}", cert.exact, cert.central);
    if let Some(a) = &agreement {
        let _ = writeln!(text, "τ₀(Pois_∞) ≅ τ₀(Pois_dg): {}", a.isomorphic);
    }
    let value = json!({
        "model": file.name,
        "representatives": t.representatives.iter().map(|(l, _)| l).collect::<Vec<_>>(),
        "extension": cert,
        "agreement": agreement,
    });
    Ok((value, text, ok))
}

fn parse_list<T>(text: &str, item: impl Fn(&str, &str) -> Result<T, CliError>) -> Result<Vec<T>, CliError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let (k, v) = s
                .split_once(':')
                .ok_or_else(|| CliError::Config(format!("expected `index:coefficient`, got `{s}`")))?;
            item(k.trim(), v.trim())
        })
        .collect()
}

fn index(s: &str) -> Result<usize, CliError> {
    s.parse().map_err(|_| CliError::Config(format!("bad index `{s}`")))
}

fn bps(
    file: &ModelFile,
    p: Option<usize>,
    potentials: bool,
    momentum: Option<&str>,
    membrane: Option<&str>,
) -> Result<(Value, String, bool), CliError> {
    let (sm, p0) = file.super_minkowski()?;
    let p = p.unwrap_or(p0);
    let ext = bps_extension(&sm, p, BpsOptions { potentials, ..BpsOptions::default() })?;
    let j = ext.to_json();
    let mut ok = j.hamiltonian && j.central && j.cocycle_identity;
    let mut text = format!(
        "{}: d = {}, {} odd generators, p = {}, {} charges, {} cocycle entries\n",
        file.name,
        ext.d,
        ext.n_odd(),
        p,
        ext.charges.len(),
        j.cocycle.len()
    );
    let _ = writeln!(text, "  hamiltonian: {}, central: {}, cocycle identity: {}", j.hamiltonian, j.central, j.cocycle_identity);
    let m_algebra = if ext.d == 11 && p == 2 {
        let r = m_algebra_report_for(&sm, &ext)?;
        ok &= r.membrane_proportional && r.vanishes_with_c_gamma;
        let ratios: Vec<String> = r.membrane_ratios.iter().map(|q| q.to_string()).collect();
        let _ = writeln!(text, "  membrane term ∝ CΓ_ab: {} (ratio {})", r.membrane_proportional, ratios.join(", "));
        Some(r)
    } else {
        None
    };
    let fraction = if momentum.is_some() || membrane.is_some() {
        let mom = parse_list(momentum.unwrap_or(""), |k, v| Ok((index(k)?, v.parse::<Rational>()?)))?;
        let mem = parse_list(membrane.unwrap_or(""), |k, v| {
            let (a, b) = k.split_once('.').ok_or_else(|| CliError::Config(format!("expected `a.b`, got `{k}`")))?;
            Ok(((index(a)?, index(b)?), v.parse::<Rational>()?))
        })?;
        let f = bps_fraction(&charge_matrix(&sm.rep, &mom, &mem)?);
        let _ = writeln!(text, "  BPS fraction: {} ({} of {})", f.fraction, f.kernel_dim, f.n);
        Some(f)
    } else {
        None
    };
    let value = json!({ "model": file.name, "extension": j, "m_algebra": m_algebra, "fraction": fraction });
    Ok((value, text, ok))
}

fn load_ring(path: &PathBuf) -> Result<CohomologyRing, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(CohomologyRing::from_json(&text)?)
}

fn serre(path: &PathBuf, g4: &str, n: i64) -> Result<(Value, String, bool), CliError> {
    let ring = load_ring(path)?;
    let g = ring.parse_class(g4, Some(4))?;
    let axioms = ring.verify_axioms();
    let result = if n == 5 { h5_correction(&ring, &g)? } else { hat_cohomology(&ring, &g, n)? };
    let dims: Vec<usize> = (0..=ring.top() as i64 + 3)
        .map(|k| hat_cohomology(&ring, &g, k).map(|r| r.dim))
        .collect::<Result<_, _>>()?;
    let ok = axioms.passed() && verify_result(&ring, &g, &result)?;
    let text = format!(
        "{}: G₄ = {}\n  H^{n}(X̂) = ker d₄|H^{} ({}) ⊕ coker d₄→H^{n} ({}) = {}\n  dims H^k(X̂), k = 0..{}: {:?}\n",
        ring.name(),
        result.g4,
        n - 3,
        result.kernel_dim,
        result.cokernel_dim,
        result.dim,
        dims.len() - 1,
        dims
    );
    let value = json!({ "ring": ring.name(), "axioms": axioms, "result": result, "hat_dims": dims });
    Ok((value, text, ok))
}

fn clifford(d: usize, ranks: &[usize]) -> Result<(Value, String, bool), CliError> {
    let rep = build_majorana_rep(d)?;
    let sym2 = rep.sym2_decomposition(ranks)?;
    let relation = rep.clifford_relation_holds();
    let parts: Vec<String> = sym2.per_rank.values().map(|v| v.to_string()).collect();
    let text = format!(
        "d = {d}, N = {}: Clifford relation {}\n  Sym² over ranks {:?}: {} = {} of {}, spans: {}\n",
        rep.n,
        if relation { "holds" } else { "FAILS" },
        ranks,
        parts.join(" + "),
        sym2.total,
        sym2.sym2_dimension,
        sym2.spans_sym2
    );
    let value = json!({ "representation": rep, "clifford_relation": relation, "sym2": sym2 });
    Ok((value, text, relation))
}

/// Re-runs the stored command and compares outputs; for `serre` the stored
/// certificates are also re-verified independently of the rerun.
fn verify(path: &PathBuf) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let saved: Value = serde_json::from_str(&text)?;
    let cmd: Command = serde_json::from_value(saved["command"].clone())
        .map_err(|e| CliError::Config(format!("report has no replayable command: {e}")))?;
    if matches!(cmd, Command::Verify { .. }) {
        return Err(CliError::Config("cannot verify a verification".into()));
    }
    let fresh = run(&cmd)?;
    let mut checks = vec![("recomputed output matches", fresh.json == saved)];
    if let Command::Serre { ring, g4, .. } = &cmd {
        let ring = load_ring(ring)?;
        let g = ring.parse_class(g4, Some(4))?;
        let stored: SpectralResult = serde_json::from_value(saved["result"]["result"].clone())?;
        checks.push(("stored certificates re-verify", verify_result(&ring, &g, &stored)?));
    }
    checks.push(("stored checks passed", fresh.ok));
    let ok = checks.iter().all(|(_, c)| *c);
    let mut out = String::new();
    for (name, c) in &checks {
        let _ = writeln!(out, "{}: {name}", if *c { "ok" } else { "MISMATCH" });
    }
    let json = json!({
        "report": path,
        "checks": checks.iter().map(|(n, c)| json!({ "check": n, "passed": c })).collect::<Vec<_>>(),
        "passed": ok,
    });
    Ok(Report { json, text: out, ok })
}
