//! Command-line front end. Every command renders either a plain-text table or,
//! with `--json`, a single JSON document; output depends only on the request.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::assembler::{assemble_motive, assemble_with_vanishing_waiver, FlagVarietyModel, StrictLinearScheme};
use crate::character::{complete, parse_element};
use crate::realization::{
    chow_poincare_of, completed_k0_identity_of, equivariant_k_groups_of, kh_flag_decomposition,
    rational_ki_presentation_of, schubert_basis, Report, Theory,
};
use crate::root_data::{parse_root_datum, RootDatum};
use crate::root_system::RootSystem;
use crate::tate::TwistPolynomial;
use crate::weyl::oracle::{oracle_length_histogram, oracle_weyl_group_with};
use crate::weyl::DEFAULT_BUDGET;
use crate::Error;

pub const BUDGET_ENV: &str = "FLAGMOTIVE_BUDGET";

#[derive(Debug, Clone, Parser)]
#[command(name = "flagmotive", version, about = "Cellular motives and equivariant realizations of flag varieties")]
pub struct CommandRequest {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Truncation degree for series and completions.
    #[arg(long, global = true, default_value_t = 10)]
    pub precision: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Order, length census, Poincaré polynomial and longest element of W.
    Weyl { group: String },
    /// Tate decomposition of the flag motive over BT.
    Motive { group: String },
    /// Assemble the motive of a scheme from a JSON filtration file.
    Assemble {
        file: PathBuf,
        /// Skip strictness and assume all connecting maps vanish.
        #[arg(long)]
        waiver: bool,
        /// Label of the base motive.
        #[arg(long, default_value = "BH")]
        base: String,
    },
    /// Equivariant K-theory of the flag variety.
    Ktheory {
        group: String,
        /// K-theory degree.
        #[arg(long = "i", default_value_t = 0, allow_negative_numbers = true)]
        degree: i64,
        /// Report the completed K_0 tensor identity.
        #[arg(long, conflicts_with_all = ["kh", "rational"])]
        completed: bool,
        /// Homotopy K-theory decomposition.
        #[arg(long, conflicts_with = "rational")]
        kh: bool,
        /// Rational K_i over a base field.
        #[arg(long)]
        rational: bool,
    },
    /// Non-equivariant Poincaré polynomial and equivariant Poincaré series of A*.
    Chow { group: String },
    /// I_T-adic completion of a Laurent polynomial in t1..tr.
    Complete {
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Cross-check word-based generation against the matrix oracle and run the invariant suite.
    Verify {
        group: String,
        #[arg(long, default_value_t = crate::weyl::oracle::ORACLE_MAX_RANK)]
        max_rank: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs `request` with the budget taken from `FLAGMOTIVE_BUDGET`.
pub fn run(request: &CommandRequest) -> Outcome {
    match budget_from_env() {
        Ok(budget) => run_with_budget(request, budget),
        Err(e) => failure(&e),
    }
}

pub fn run_with_budget(request: &CommandRequest, budget: usize) -> Outcome {
    match dispatch(request, budget) {
        Ok((code, stdout)) => Outcome {
            exit_code: code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => failure(&e),
    }
}

fn failure(e: &Error) -> Outcome {
    Outcome {
        exit_code: e.exit_code(),
        stdout: String::new(),
        stderr: format!("error[{}]: {e}\n", e.name()),
    }
}

fn budget_from_env() -> Result<usize, Error> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("{BUDGET_ENV} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn dispatch(req: &CommandRequest, budget: usize) -> Result<(i32, String), Error> {
    let model = |group: &str| -> Result<FlagVarietyModel, Error> {
        let datum = parse_root_datum(group)?;
        Ok(FlagVarietyModel::with_budget(&datum, budget)?)
    };
    match &req.command {
        Command::Weyl { group } => Ok((0, weyl(&model(group)?, req.json))),
        Command::Motive { group } => motive(&model(group)?, req.json).map(|s| (0, s)),
        Command::Assemble { file, waiver, base } => assemble(file, *waiver, base, req.json).map(|s| (0, s)),
        Command::Ktheory {
            group,
            degree,
            completed,
            kh,
            rational,
        } => {
            let m = model(group)?;
            if *completed {
                completed_identity(&m, req.precision, req.json)
            } else if *kh {
                let p = kh_flag_decomposition(&m)?;
                Ok((0, report(Report::from_presentation(&m.datum.label, Theory::Kh, &p), req.json)))
            } else {
                let p = if *rational {
                    rational_ki_presentation_of(&m, *degree)?
                } else {
                    equivariant_k_groups_of(&m, *degree)?
                };
                let mut r = Report::from_presentation(&m.datum.label, Theory::Ki, &p);
                r.degree = Some(*degree);
                Ok((0, report(r, req.json)))
            }
        }
        Command::Chow { group } => chow(&model(group)?, req.precision, req.json).map(|s| (0, s)),
        Command::Complete { group, element } => {
            let datum = parse_root_datum(group)?;
            complete_element(&datum, element, req.precision, req.json).map(|s| (0, s))
        }
        Command::Verify { group, max_rank } => verify(&model(group)?, *max_rank, budget, req.json),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn weyl(m: &FlagVarietyModel, as_json: bool) -> String {
    let w = &m.weyl;
    let census = w.length_census();
    let poly = w.poincare_polynomial();
    let longest = w.longest();
    if as_json {
        return to_json(&json!({
            "group": m.datum.label,
            "rank": m.datum.rank(),
            "torus_rank": m.datum.torus_rank,
            "order": w.order(),
            "length_census": census,
            "poincare": poly,
            "longest": {"word": longest.word_string(), "length": longest.length()},
        }));
    }
    let mut out = String::new();
    writeln!(out, "group:     {}", m.datum.label).unwrap();
    writeln!(out, "order:     {}", w.order()).unwrap();
    writeln!(out, "poincare:  {poly}").unwrap();
    writeln!(out, "longest:   {} (length {})", longest.word_string(), longest.length()).unwrap();
    writeln!(out, "length  count").unwrap();
    for (l, c) in census.iter().enumerate() {
        writeln!(out, "{l:>6}  {c}").unwrap();
    }
    out
}

fn motive(m: &FlagVarietyModel, as_json: bool) -> Result<String, Error> {
    let assembly = m.motive()?;
    let motive = &assembly.motive;
    if as_json {
        return Ok(to_json(&json!({
            "group": m.datum.label,
            "rank": motive.rank(),
            "route": assembly.route,
            "motive": motive,
        })));
    }
    let mut out = String::new();
    writeln!(out, "M([T\\{}]) = {motive}", m.filtration.label).unwrap();
    writeln!(out, "twist  multiplicity").unwrap();
    for (t, mult) in motive.summands() {
        writeln!(out, "{:>5}  {mult}", t.twist).unwrap();
    }
    writeln!(out, "rank: {}", motive.rank()).unwrap();
    Ok(out)
}

fn assemble(file: &PathBuf, waiver: bool, base: &str, as_json: bool) -> Result<String, Error> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", file.display())))?;
    let scheme = StrictLinearScheme::from_json(&text)
        .map_err(|e| Error::Input(format!("invalid filtration in {}: {e}", file.display())))?;
    let assembly = if waiver {
        assemble_with_vanishing_waiver(&scheme, base)?
    } else {
        assemble_motive(&scheme, base)?
    };
    if as_json {
        return Ok(to_json(&json!({
            "label": scheme.label,
            "route": assembly.route,
            "certified_pairs": assembly.certified_pairs,
            "rank": assembly.motive.rank(),
            "motive": assembly.motive,
        })));
    }
    let route = match assembly.route {
        crate::assembler::SplittingRoute::Strict => "strict",
        crate::assembler::SplittingRoute::VanishingWaiver => "vanishing waiver",
    };
    let name = if scheme.label.is_empty() { "X" } else { scheme.label.as_str() };
    Ok(format!(
        "M({name}) = {}\nroute: {route}\ncertified pairs: {}\n",
        assembly.motive, assembly.certified_pairs
    ))
}

fn report(r: Report, as_json: bool) -> String {
    if as_json {
        return to_json(&r);
    }
    let mut out = String::new();
    let theory = match r.theory {
        Theory::Kh => "KH",
        Theory::Ki => "K",
        Theory::K0Completed => "K_0 completed",
        Theory::Chow => "Chow",
    };
    writeln!(out, "group:  {}", r.group).unwrap();
    match r.degree {
        Some(i) => writeln!(out, "theory: {theory}_{i}").unwrap(),
        None => writeln!(out, "theory: {theory}").unwrap(),
    }
    let module = match &r.tensor_factor {
        Some(f) => format!("{f} ⊗ ({})^{}", r.coefficient_ring, r.rank),
        None => format!("({})^{}", r.coefficient_ring, r.rank),
    };
    writeln!(out, "module: {module}").unwrap();
    if let Some(note) = &r.note {
        writeln!(out, "note:   {note}").unwrap();
    }
    writeln!(out, "degree  generator").unwrap();
    for b in &r.basis {
        writeln!(out, "{:>6}  {}", b.degree, b.label).unwrap();
    }
    if let Some(series) = &r.series {
        for key in ["poincare", "series", "closed_form"] {
            if let Some(Value::String(s)) = series.get(key) {
                writeln!(out, "{key}: {s}").unwrap();
            }
        }
    }
    out
}

fn completed_identity(m: &FlagVarietyModel, precision: usize, as_json: bool) -> Result<(i32, String), Error> {
    let id = completed_k0_identity_of(m, precision)?;
    let code = if id.holds() { 0 } else { 2 };
    if as_json {
        let mut r = Report::from_presentation(&m.datum.label, Theory::K0Completed, &id.left);
        r.identity = Some(serde_json::to_value(&id).expect("identity report serializes"));
        return Ok((code, to_json(&r)));
    }
    let mut out = String::new();
    writeln!(out, "group:     {}", id.group).unwrap();
    writeln!(out, "ring:      {}", id.coefficient_ring.descriptor).unwrap();
    writeln!(out, "ring dim:  {}", id.coefficient_ring.dimension).unwrap();
    for g in &id.coefficient_ring.generators {
        writeln!(out, "  {} -> {}", g.character, g.completion).unwrap();
    }
    writeln!(out, "left:      {} (rank {})", id.left, id.left_rank).unwrap();
    writeln!(out, "right:     {} (rank {})", id.right, id.right_rank).unwrap();
    writeln!(out, "dims:      {} = {}", id.left_truncated_dimension, id.right_truncated_dimension).unwrap();
    let tor: Vec<String> = id.tor.iter().map(|t| format!("Tor_{} = {}", t.p, t.rank)).collect();
    writeln!(out, "tor:       {}", tor.join(", ")).unwrap();
    writeln!(out, "identity:  {}", if id.holds() { "holds" } else { "FAILS" }).unwrap();
    Ok((code, out))
}

fn chow(m: &FlagVarietyModel, precision: usize, as_json: bool) -> Result<String, Error> {
    let (w, series) = chow_poincare_of(m, precision)?;
    let r = m.datum.torus_rank;
    let ring = if r == 0 {
        "A*_T(S)_Q = Q".to_string()
    } else {
        let vars: Vec<String> = (0..r).map(|i| crate::character::variable_name('c', r, i)).collect();
        format!("A*_T(S)_Q = Sym X*(T)_Q = Q[{}]", vars.join(", "))
    };
    let mut rep = Report::from_presentation(
        &m.datum.label,
        Theory::Chow,
        &crate::presentation::ModulePresentation::free(ring, schubert_basis(&m.weyl)),
    );
    rep.series = Some(if as_json {
        json!({
            "poincare": w,
            "coefficients": series.coefficients().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "precision": precision,
            "closed_form": series.closed_form(),
        })
    } else {
        json!({
            "poincare": w.to_string(),
            "series": series.to_string(),
            "closed_form": series.closed_form(),
        })
    });
    Ok(report(rep, as_json))
}

fn complete_element(datum: &RootDatum, element: &str, precision: usize, as_json: bool) -> Result<String, Error> {
    let a = parse_element(element, datum.torus_rank)?;
    let c = complete(&a, precision);
    if as_json {
        return Ok(to_json(&json!({
            "group": datum.label,
            "element": a,
            "augmentation": a.augmentation().to_string(),
            "completion": c,
        })));
    }
    Ok(format!("{a}  ->  {c}\n"))
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        passed,
        detail: detail.into(),
    }
}

fn verify(m: &FlagVarietyModel, max_rank: usize, budget: usize, as_json: bool) -> Result<(i32, String), Error> {
    let roots: &RootSystem = m.weyl.root_system();
    let w = &m.weyl;
    let oracle = oracle_weyl_group_with(roots, max_rank, budget)?;
    let mut checks = Vec::new();

    let words: std::collections::BTreeSet<_> = w.elements().iter().map(|e| e.matrix()).collect();
    checks.push(check(
        "oracle_matrix_set",
        words == oracle,
        format!("{} word-generated vs {} oracle matrices", words.len(), oracle.len()),
    ));
    let census = w.length_census();
    let hist = oracle_length_histogram(roots, &oracle);
    checks.push(check("oracle_length_histogram", census == hist, format!("{census:?} vs {hist:?}")));

    let poly = w.poincare_polynomial();
    checks.push(check("palindromic_poincare", poly.is_palindromic(), poly.to_string()));
    checks.push(check(
        "coefficient_sum_is_order",
        poly.total() == w.order().into(),
        format!("{} vs {}", poly.total(), w.order()),
    ));
    let bad = w.ids().filter(|&id| w.length(id) != w.inversion_count(id)).count();
    checks.push(check("length_is_inversion_count", bad == 0, format!("{bad} mismatches")));

    let motive = m.motive()?.motive;
    let twist = motive.twist_polynomial()?;
    checks.push(check(
        "twist_polynomial_is_poincare",
        twist == TwistPolynomial::from(poly.clone()),
        twist.to_string(),
    ));
    let kh = kh_flag_decomposition(m)?;
    let k = equivariant_k_groups_of(m, 0)?;
    checks.push(check(
        "realization_ranks",
        kh.rank() == w.order() && k.rank() == w.order() && kh.is_free() && k.is_free(),
        format!("KH {} / K_0 {} / |W| {}", kh.rank(), k.rank(), w.order()),
    ));
    let chow = chow_poincare_of(m, 6);
    checks.push(check(
        "chow_kunneth",
        chow.is_ok(),
        chow.as_ref().map_or_else(|e| e.to_string(), |(_, s)| s.to_string()),
    ));
    let holds = (0..=6).all(|n| completed_k0_identity_of(m, n).is_ok_and(|id| id.holds()));
    checks.push(check("completed_k0_identity", holds, "precisions 0..=6"));

    let passed = checks.iter().all(|c| c.passed);
    let code = if passed { 0 } else { 2 };
    if as_json {
        return Ok((
            code,
            to_json(&json!({"group": m.datum.label, "passed": passed, "checks": checks})),
        ));
    }
    let mut out = String::new();
    for c in &checks {
        writeln!(out, "[{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail).unwrap();
    }
    writeln!(out, "{}: {}", m.datum.label, if passed { "all checks passed" } else { "verification FAILED" }).unwrap();
    Ok((code, out))
}
