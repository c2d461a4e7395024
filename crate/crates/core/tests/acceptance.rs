//! Acceptance suite. Runs as a plain binary (`harness = false`) so that every
//! criterion prints exactly one `[PASS]`/`[FAIL]` line; exits non-zero if any
//! criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use flagmotive::assembler::{
    assemble_motive, assemble_with_vanishing_waiver, flag_motive, kunneth_factorization, kunneth_product,
    AssemblyError, StrictLinearScheme,
};
use flagmotive::character::{complete, CharacterRingElement, CompletedElement};
use flagmotive::cli::{run_with_budget, CommandRequest};
use flagmotive::poly::QPolynomial;
use flagmotive::realization::{completed_k0_identity, equivariant_k_groups};
use flagmotive::root_data::{parse_root_datum, RootDatum};
use flagmotive::root_system::RootSystem;
use flagmotive::tate::Twist;
use flagmotive::weyl::oracle::{oracle_length_histogram, oracle_weyl_group};
use flagmotive::weyl::{WeylGroup, DEFAULT_BUDGET};

use clap::Parser;

type Outcome = Result<(), String>;

fn datum(spec: &str) -> RootDatum {
    parse_root_datum(spec).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

fn group(spec: &str) -> (RootSystem, WeylGroup) {
    let roots = RootSystem::generate(&datum(spec));
    let w = WeylGroup::generate(&roots, DEFAULT_BUDGET).unwrap();
    (roots, w)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `Π [d_i]_q` over the degrees of the basic invariants.
fn product_formula(degrees: &[usize]) -> QPolynomial {
    degrees.iter().fold(QPolynomial::one(), |acc, &d| {
        &acc * &QPolynomial::from_coeffs(vec![1; d])
    })
}

fn invariant_degrees(spec: &str) -> Vec<usize> {
    let mut out = Vec::new();
    for factor in spec.split('x') {
        let (class, n) = factor.split_at(1);
        let n: usize = n.parse().unwrap();
        match class {
            "A" => out.extend(2..=n + 1),
            "B" | "C" => out.extend((1..=n).map(|k| 2 * k)),
            "D" => out.extend((1..n).map(|k| 2 * k).chain([n])),
            "G" => out.extend([2, 6]),
            "F" => out.extend([2, 6, 8, 12]),
            "T" => {}
            _ => panic!("no degree table for {factor}"),
        }
    }
    out
}

/// Named types of semisimple rank at most 3, including products and a central torus.
const RANK_LE_3: &[&str] = &[
    "A1", "A2", "A3", "B2", "B3", "C3", "G2", "A1xA1", "A1xA2", "A1xB2", "A1xG2", "A1xA1xA1", "T1", "A1xT1", "A2xT1",
];

fn c1_sl2_fixture() -> Outcome {
    let m = flag_motive(&datum("A1")).map_err(|e| e.to_string())?;
    let got: BTreeMap<Twist, u64> = m.summands().collect();
    let want = BTreeMap::from([(Twist::pure(0), 1), (Twist::pure(1), 1)]);
    ensure(got == want, || format!("A1 motive is {m}"))?;
    ensure(m.base() == "BT", || format!("base {}", m.base()))
}

fn c2_gm_completion() -> Outcome {
    let n = 8;
    let t_inv = CharacterRingElement::character(vec![-1]);
    let got = complete(&t_inv, n);
    let want = CompletedElement::from_terms(1, n, (0..=n as u32).map(|k| (vec![k], BigInt::from(1))));
    ensure(got == want, || format!("complete(t^-1, 8) = {got}"))?;
    let one_minus_x = CompletedElement::from_terms(1, n, [(vec![0], BigInt::from(1)), (vec![1], BigInt::from(-1))]);
    let back = got.multiply(&one_minus_x).map_err(|e| e.to_string())?;
    ensure(back == CompletedElement::one(1, n), || format!("(1 - x) * complete(t^-1) = {back}"))?;
    let gen = complete(&CharacterRingElement::from_terms(1, [(vec![0], 1.into()), (vec![1], (-1).into())]), n);
    ensure(gen == CompletedElement::variable(1, n, 0), || format!("complete(1 - t) = {gen}"))
}

fn c3_twist_polynomial(spec: &str) -> Outcome {
    let d = datum(spec);
    let twist = flag_motive(&d).map_err(|e| e.to_string())?.twist_polynomial().map_err(|e| e.to_string())?;
    let roots = RootSystem::generate(&d);
    let matrices = oracle_weyl_group(&roots).map_err(|e| e.to_string())?;
    let census = QPolynomial::from_coeffs(oracle_length_histogram(&roots, &matrices));
    ensure(twist.as_poly() == &census, || format!("{spec}: twist {twist} vs census {census}"))?;
    let formula = product_formula(&invariant_degrees(spec));
    ensure(census == formula, || format!("{spec}: census {census} vs degree formula {formula}"))
}

fn timed(limit: Duration, what: &str, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    f()?;
    let elapsed = start.elapsed();
    ensure(elapsed <= limit, || format!("{what} took {elapsed:?}, limit {limit:?}"))
}

fn c3_all() -> Outcome {
    timed(Duration::from_secs(1), "rank <= 3", || all_of(RANK_LE_3, c3_twist_polynomial))?;
    timed(Duration::from_secs(10), "F4", || c3_twist_polynomial("F4"))
}

fn c4_oracle(spec: &str) -> Outcome {
    let (roots, w) = group(spec);
    let words: std::collections::BTreeSet<_> = w.elements().iter().map(|e| e.matrix()).collect();
    let oracle = oracle_weyl_group(&roots).map_err(|e| e.to_string())?;
    ensure(words == oracle, || format!("{spec}: matrix sets differ ({} vs {})", words.len(), oracle.len()))?;
    let census = w.length_census();
    let hist = oracle_length_histogram(&roots, &oracle);
    ensure(census == hist, || format!("{spec}: histograms {census:?} vs {hist:?}"))
}

fn c5_invariants() -> Outcome {
    let specs = [
        "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2", "A1xB2", "A1xA1xA1", "G2xT1",
    ];
    for spec in specs {
        let (roots, w) = group(spec);
        let p = w.poincare_polynomial();
        ensure(p.is_palindromic(), || format!("{spec}: {p} not palindromic"))?;
        ensure(p.total() == BigInt::from(w.order()), || format!("{spec}: sum {} vs |W| {}", p.total(), w.order()))?;
        if roots.rank() <= 3 {
            for e in w.elements() {
                let inv = roots.inversion_count(&e.matrix());
                ensure(inv == e.length(), || format!("{spec}: {e} has {inv} inversions"))?;
            }
        }
    }
    let mut factorial = 1;
    for n in 1..=4 {
        factorial *= n + 1;
        let (_, w) = group(&format!("A{n}"));
        ensure(w.order() == factorial, || format!("|W(A{n})| = {}", w.order()))?;
    }
    Ok(())
}

fn c6_strictness_gate() -> Outcome {
    let scheme = StrictLinearScheme::new(vec![vec![2], vec![1]], true, "X");
    match assemble_motive(&scheme, "BH") {
        Err(AssemblyError::SplittingNotCertified { .. }) => {}
        other => return Err(format!("strict assembly gave {other:?}")),
    }
    let m = assemble_with_vanishing_waiver(&scheme, "BH").map_err(|e| e.to_string())?.motive;
    let got: BTreeMap<Twist, u64> = m.summands().collect();
    ensure(got == BTreeMap::from([(Twist::pure(1), 1), (Twist::pure(2), 1)]), || format!("waiver gave {m}"))?;

    let path = std::env::temp_dir().join(format!("flagmotive-acceptance-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"proper": true, "levels": [[2], [1]], "label": "X"}"#).map_err(|e| e.to_string())?;
    let file = path.to_str().unwrap();
    let strict = run_with_budget(&CommandRequest::parse_from(["flagmotive", "assemble", file]), DEFAULT_BUDGET);
    let waived = run_with_budget(
        &CommandRequest::parse_from(["flagmotive", "--json", "assemble", "--waiver", file]),
        DEFAULT_BUDGET,
    );
    std::fs::remove_file(&path).ok();
    ensure(
        strict.exit_code == 1 && strict.stderr.starts_with("error[SplittingNotCertified]"),
        || format!("cli without --waiver: {strict:?}"),
    )?;
    ensure(waived.exit_code == 0, || format!("cli with --waiver: {waived:?}"))?;
    let v: serde_json::Value = serde_json::from_str(&waived.stdout).map_err(|e| e.to_string())?;
    let summands = &v["motive"]["summands"];
    ensure(
        summands == &serde_json::json!([{"twist": 1, "mult": 1}, {"twist": 2, "mult": 1}]),
        || format!("cli summands {summands}"),
    )
}

/// `[q^n] W(q)/(1-q)^r = Σ_k W_k binom(n - k + r - 1, r - 1)`.
fn expand_directly(w: &QPolynomial, r: usize, precision: usize) -> Vec<BigInt> {
    let binom = |n: usize, k: usize| -> BigInt {
        (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
    };
    (0..=precision)
        .map(|n| {
            (0..=n)
                .map(|k| {
                    let weight = if r == 0 {
                        BigInt::from(u8::from(k == n))
                    } else {
                        binom(n - k + r - 1, r - 1)
                    };
                    w.coeff(k) * weight
                })
                .sum()
        })
        .collect()
}

fn c7_kunneth(spec: &str) -> Outcome {
    let d = datum(spec);
    let factors = kunneth_factorization(&d, 6).map_err(|e| e.to_string())?;
    let product = kunneth_product(&factors);
    let (_, w) = group(spec);
    let direct = expand_directly(w.poincare_polynomial().as_poly(), d.torus_rank, 6);
    ensure(product.padded(6) == direct, || format!("{spec}: {product} vs {direct:?}"))
}

fn c8_k_theory(spec: &str) -> Outcome {
    let d = datum(spec);
    let order = oracle_weyl_group(&RootSystem::generate(&d)).map_err(|e| e.to_string())?.len();
    for i in 0..=3 {
        let p = equivariant_k_groups(&d, i).map_err(|e| e.to_string())?;
        ensure(p.rank() == order && p.relations.is_empty(), || format!("{spec}: K_{i} rank {}", p.rank()))?;
    }
    for n in 0..=6 {
        let id = completed_k0_identity(&d, n).map_err(|e| e.to_string())?;
        ensure(id.left_rank == order && id.right_rank == order, || {
            format!("{spec} @ {n}: ranks {} / {}", id.left_rank, id.right_rank)
        })?;
        ensure(!id.tor.is_empty() && id.tor.iter().all(|t| t.rank == 0) && id.tor_vanishes, || {
            format!("{spec} @ {n}: higher Tor {:?}", id.tor)
        })?;
    }
    Ok(())
}

fn random_element(rng: &mut ChaCha8Rng, rank: usize) -> CharacterRingElement {
    let terms = rng.gen_range(0..=4);
    CharacterRingElement::from_terms(
        rank,
        (0..terms).map(|_| {
            let exp = (0..rank).map(|_| rng.gen_range(-3..=3)).collect();
            (exp, BigInt::from(rng.gen_range(-5..=5)))
        }),
    )
}

fn c9_homomorphism() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..100 {
        let rank = rng.gen_range(1..=3);
        let n = rng.gen_range(0..=8);
        let a = random_element(&mut rng, rank);
        let b = random_element(&mut rng, rank);
        let ab = a.multiply(&b).map_err(|e| e.to_string())?;
        let lhs = complete(&ab, n);
        let rhs = complete(&a, n).multiply(&complete(&b, n)).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("case {case}: a = {a}, b = {b}, N = {n}: {lhs} vs {rhs}"))?;
    }
    Ok(())
}

fn all_of(specs: &[&str], f: fn(&str) -> Outcome) -> Outcome {
    specs.iter().try_for_each(|s| f(s))
}

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    body: Box<dyn Fn() -> Outcome>,
}

fn criterion(id: u32, title: &'static str, limit_ms: Option<u64>, body: impl Fn() -> Outcome + 'static) -> Criterion {
    Criterion {
        id,
        title,
        limit: limit_ms.map(Duration::from_millis),
        body: Box::new(body),
    }
}

fn main() -> ExitCode {
    let criteria = [
        criterion(1, "A1 flag motive is 1<0> + 1<1>", Some(1_000), c1_sl2_fixture),
        criterion(2, "completion of Z[t, t^-1] at precision 8", Some(1_000), c2_gm_completion),
        criterion(3, "twist polynomial = Poincaré polynomial (rank <= 3, F4)", None, c3_all),
        criterion(4, "word generation agrees with matrix oracle", Some(30_000), || {
            all_of(&["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"], c4_oracle)
        }),
        criterion(5, "invariant suite", None, c5_invariants),
        criterion(6, "strictness gate and vanishing waiver", None, c6_strictness_gate),
        criterion(7, "Künneth expansion to precision 6", Some(1_000), || all_of(RANK_LE_3, c7_kunneth)),
        criterion(8, "K-group ranks and completed K_0 identity", None, || all_of(RANK_LE_3, c8_k_theory)),
        criterion(9, "completion is a ring homomorphism (100 pairs)", Some(5_000), c9_homomorphism),
    ];

    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.body)();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| match c.limit {
            Some(limit) if elapsed > limit => Err(format!("took {elapsed:?}, limit {limit:?}")),
            _ => Ok(()),
        });
        match outcome {
            Ok(()) => println!("[PASS] criterion {}: {} ({:.3}s)", c.id, c.title, elapsed.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] criterion {}: {} ({:.3}s): {msg}", c.id, c.title, elapsed.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} check(s) failed");
        ExitCode::FAILURE
    }
}
