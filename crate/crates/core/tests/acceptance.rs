//! Acceptance criteria, one PASS/FAIL line each. All comparisons are exact
//! (rational or integer equality, zero tolerance).
//!
//! Runs without the libtest harness so every line is printed. The process
//! fails if any criterion fails other than those listed in
//! [`KNOWN_FAILURES`] with exactly the recorded detail.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;

use common::*;
use gradlie::cli;
use gradlie::format;
use gradlie::freelie::{self, AlphaValue, GradedAlphabet};
use gradlie::groups::GroupElement;
use gradlie::liealg::{BracketEntry, EndoMatrix, GradedLieAlgebra, SpanFailure};
use gradlie::linear::Q;
use gradlie::pbw::{self, PbwMonomial, SuElement};
use gradlie::snf;
use gradlie::unigroup;
use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria whose statement does not hold as written, with the exact
/// detail string the check is expected to produce.
const KNOWN_FAILURES: &[(u32, &str)] = &[(
    10,
    "Jacobi still holds after +1 on: [e, h] coefficient of f (0 -> 1, rejected by grading); \
     [e, f] coefficient of h (1 -> 2, accepted); [h, f] coefficient of e (0 -> 1, rejected by grading)",
)];

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli_run(args: &[&str]) -> cli::Outcome {
    let mut full = vec!["gradlie".to_string()];
    let mut prev = "";
    for a in args {
        let file = matches!(
            prev,
            "--algebra" | "--relabel" | "--mats" | "--presentation"
        );
        full.push(if file {
            fixture(a).display().to_string()
        } else {
            a.to_string()
        });
        prev = a;
    }
    cli::run(full)
}

fn c1_abelian_example() -> Outcome {
    let alg = load("c2c2_abelian.alg");
    let out = cli_run(&[
        "pbw-basis",
        "--algebra",
        "c2c2_abelian.alg",
        "--max-len",
        "4",
    ]);
    ensure(out.code == 0, || format!("pbw-basis exit {}", out.code))?;
    let listed: Vec<&str> = out
        .stdout
        .lines()
        .filter(|l| l.contains("  deg "))
        .map(|l| l.split("  deg ").next().unwrap())
        .collect();
    let expected = [
        "1", "x", "y", "x x", "y y", "x x x", "y y y", "x x x x", "y y y y",
    ];
    ensure(listed == expected, || format!("basis {listed:?}"))?;

    let out = cli_run(&[
        "mul",
        "--algebra",
        "c2c2_abelian.alg",
        "--word",
        "x",
        "--word",
        "y",
    ]);
    ensure(out.code == 0 && out.stdout.starts_with("0\n"), || {
        format!("mul x y gave {:?}", out.stdout)
    })?;

    // F[X, Y]/(XY): basis X^a, Y^b; X^a X^b = X^(a+b), mixed products vanish
    let mono = |letter: usize, k: usize| vec![letter; k];
    let basis: Vec<(usize, usize)> = std::iter::once((0, 0))
        .chain((1..=3).flat_map(|k| [(0, k), (1, k)]))
        .collect();
    let mut checked = 0;
    for &(la, a) in &basis {
        for &(lb, b) in &basis {
            let x = pbw::normalize_word(&alg, &mono(la, a)).unwrap();
            let y = pbw::normalize_word(&alg, &mono(lb, b)).unwrap();
            let got = pbw::su_mul(&alg, &x, &y).unwrap();
            let want: SuElement = if a == 0 || b == 0 || la == lb {
                let letter = if a == 0 { lb } else { la };
                SuElement::term(PbwMonomial::new(mono(letter, a + b)).unwrap(), Q::one())
            } else {
                SuElement::zero()
            };
            ensure(got == want, || format!("x{la}^{a} * x{lb}^{b}"))?;
            checked += 1;
        }
    }
    Ok(format!(
        "9 monomials, x*y = 0, {checked} table entries match F[X,Y]/(XY)"
    ))
}

fn c2_matrix_units() -> Outcome {
    let out = cli_run(&[
        "graded-span-check",
        "--algebra",
        "free3_abelian.alg",
        "--mats",
        "free3_all_eij.mats",
    ]);
    ensure(out.code == 1, || format!("all e_ij: exit {}", out.code))?;
    ensure(out.stdout.contains("witness: (e12, e23)"), || {
        out.stdout.clone()
    })?;
    let out = cli_run(&[
        "graded-span-check",
        "--algebra",
        "free3_abelian.alg",
        "--mats",
        "free3_block12.mats",
    ]);
    ensure(out.code == 0, || format!("block: exit {}", out.code))?;

    // the same two answers from matrices built in code rather than read from files
    let alg = load("free3_abelian.alg");
    let g = alg.group();
    let deg = |i: usize, j: usize| {
        g.mul(alg.degree(i), &g.inv(alg.degree(j)).unwrap())
            .unwrap()
    };
    let all: Vec<EndoMatrix> = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .map(|(i, j)| EndoMatrix::unit(3, i, j, Some(deg(i, j))))
        .collect();
    let r = alg.is_graded_lie_subspace(&all).unwrap();
    let w = r.witness.as_ref().ok_or("no witness")?;
    ensure(
        !r.graded && (w.first_name.as_str(), w.second_name.as_str()) == ("e12", "e23"),
        || format!("{r:?}"),
    )?;
    ensure(w.reason == SpanFailure::NonCommutingDegrees, || {
        format!("{:?}", w.reason)
    })?;
    let block: Vec<EndoMatrix> = [(0, 0), (0, 1), (1, 0), (1, 1)]
        .iter()
        .map(|&(i, j)| EndoMatrix::unit(3, i, j, Some(deg(i, j))))
        .collect();
    ensure(alg.is_graded_lie_subspace(&block).unwrap().graded, || {
        "block not graded".into()
    })?;
    Ok("all nine: false with (e12, e23); {e11, e12, e21, e22}: true".into())
}

fn c3_classical_limit() -> Outcome {
    let alg = load("sl2.alg");
    let basis = pbw::pbw_basis(&alg, 6).unwrap();
    let mut counts = Vec::new();
    for d in 0..=6u64 {
        let c = basis.iter().filter(|m| m.len() as u64 == d).count() as u64;
        ensure(c == binomial(d + 2, 2), || format!("length {d}: {c}"))?;
        counts.push(c);
    }
    ensure(counts[3] == 10 && counts[6] == 28, || format!("{counts:?}"))?;
    let out = cli_run(&["normalize", "--algebra", "sl2.alg", "--word", "f e"]);
    ensure(
        out.stdout.lines().next() == Some("1 * e f + -1 * h"),
        || out.stdout.clone(),
    )?;
    Ok(format!("counts {counts:?}; f e = e f - h"))
}

fn c4_confluence() -> Outcome {
    let mut words_checked = 0;
    for name in ALGEBRAS {
        let alg = load(name);
        let mut oracle = ConfluenceOracle::new(&alg);
        for len in 0..=4 {
            for w in words(alg.dim(), len) {
                let want = oracle.sigma(&w).map_err(|e| format!("{name}: {e}"))?;
                let got = from_su(&pbw::normalize_word(&alg, &w).unwrap());
                ensure(got == want, || format!("{name}: {w:?}"))?;
            }
        }
        words_checked += oracle.words_checked;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let algs: Vec<GradedLieAlgebra> = ALGEBRAS.iter().map(|n| load(n)).collect();
    for t in 0..1000 {
        let alg = &algs[t % algs.len()];
        let c = dense_constants(alg);
        let len = 5 + t % 3;
        let w: Vec<usize> = (0..len).map(|_| rng.random_range(0..alg.dim())).collect();
        let got = from_su(&pbw::normalize_word(alg, &w).unwrap());
        ensure(sigma_random(alg, &c, &w, &mut rng) == got, || {
            format!("{}: {w:?}", ALGEBRAS[t % algs.len()])
        })?;
    }
    Ok(format!("{words_checked} words with every descent order, 1000 random orders at lengths 5-7, 0 disagreements"))
}

fn c5_pbw_rank() -> Outcome {
    let mut cases = 0;
    for name in ALGEBRAS {
        let alg = load(name);
        if alg.dim() > 3 {
            continue;
        }
        let basis = pbw::pbw_basis(&alg, 4).unwrap();
        let mut images: Vec<BTreeMap<Vec<usize>, Q>> = Vec::new();
        for d in 0..=4 {
            images.extend(
                words(alg.dim(), d)
                    .iter()
                    .map(|w| from_su(&pbw::normalize_word(&alg, w).unwrap())),
            );
            let count = basis.iter().filter(|m| m.len() <= d).count();
            let rank = dense_rank(&images);
            ensure(rank == count, || {
                format!("{name} length <= {d}: rank {rank}, basis {count}")
            })?;
            cases += 1;
        }
    }
    Ok(format!(
        "{cases} (fixture, length) pairs: rank of normalize image = PBW count"
    ))
}

fn c6_witt() -> Outcome {
    let expect: [(&str, Vec<usize>); 3] = [
        ("trivial2.alg", vec![2, 4, 8, 16, 32]),
        ("c2c2_vars.alg", vec![2; 5]),
        ("free3_abelian.alg", vec![3; 5]),
    ];
    for (name, dims) in &expect {
        let out = cli_run(&[
            "witt-check",
            "--algebra",
            name,
            "--max-len",
            "5",
            "--format",
            "machine",
        ]);
        ensure(out.code == 0, || format!("{name}: exit {}", out.code))?;
        let r: cli::Report = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
        let got: Vec<usize> = r.result["rows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x["monomial_dim"].as_u64().unwrap() as usize)
            .collect();
        let ranks: Vec<usize> = r.result["rows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x["pbw_rank"].as_u64().unwrap() as usize)
            .collect();
        ensure(&got == dims && ranks == got, || {
            format!("{name}: dims {got:?}, ranks {ranks:?}")
        })?;
    }
    let free3 = GradedAlphabet::from_algebra(&load("free3_abelian.alg"));
    let space = freelie::free_monomial_basis(&free3, 5).unwrap();
    ensure(
        space
            .monomials()
            .iter()
            .all(|w| w.iter().all(|&l| l == w[0])),
        || "free group: mixed word survived".into(),
    )?;
    let basis =
        freelie::lyndon_basis(&GradedAlphabet::from_algebra(&load("trivial2.alg")), 5).unwrap();
    let lie: Vec<i64> = (1..=5)
        .map(|d| basis.iter().filter(|b| b.word.len() == d).count() as i64)
        .collect();
    ensure(lie == [2, 1, 2, 3, 6] && lie == witt_numbers(2, 5), || {
        format!("{lie:?}")
    })?;
    Ok("three alphabets pass to length 5; free Lie dims [2, 1, 2, 3, 6]".into())
}

fn c7_universal_group() -> Outcome {
    let sl2 = load("sl2.alg");
    let p = unigroup::universal_presentation(&sl2).unwrap();
    let d = unigroup::abelianize(&p).map_err(|e| e.to_string())?;
    ensure(d.describe() == "Z", || d.describe())?;
    let mut images: Vec<(String, BigInt)> = d
        .generators
        .iter()
        .cloned()
        .zip(d.images.iter().map(|v| v[0].clone()))
        .collect();
    // the generator of Z is defined up to sign
    if images.iter().any(|(g, x)| g == "[1]" && x.is_negative()) {
        images.iter_mut().for_each(|(_, x)| *x = -x.clone());
    }
    let want: Vec<(String, BigInt)> = [("[-1]", -1), ("[0]", 0), ("[1]", 1)]
        .iter()
        .map(|(g, x)| (g.to_string(), BigInt::from(*x)))
        .collect();
    ensure(images == want, || format!("{images:?}"))?;
    ensure(
        cli_run(&["is-abelian", "--algebra", "sl2.alg"]).code == 0,
        || "sl2 is-abelian".into(),
    )?;

    let c2 = load("c2c2_abelian.alg");
    let v = unigroup::is_abelian_grading(&c2).map_err(|e| e.to_string())?;
    ensure(
        v.data.describe() == "Z^2" && v.abelian && v.collisions.is_empty(),
        || format!("{v:?}"),
    )?;
    ensure(
        cli_run(&["is-abelian", "--algebra", "c2c2_abelian.alg"]).code == 0,
        || "c2c2 is-abelian".into(),
    )?;

    let out = cli_run(&["is-abelian", "--presentation", "collision.pres"]);
    ensure(
        out.code == 1 && out.stdout.contains("abelian: false"),
        || out.stdout.clone(),
    )?;

    // unimodularity, recomputed here from the raw forms
    let pres = [
        p,
        unigroup::universal_presentation(&c2).unwrap(),
        format::load_presentation(&fixture("collision.pres")).unwrap(),
    ];
    for pr in &pres {
        let m = unigroup::relation_matrix(pr);
        let s = snf::smith_normal_form(&m, m.len(), pr.generators.len());
        let (du, dv) = (snf::determinant(&s.u), snf::determinant(&s.v));
        ensure(du.abs().is_one() && dv.abs().is_one(), || {
            format!("det U = {du}, det V = {dv}")
        })?;
        ensure(
            snf::verify(&m, m.len(), pr.generators.len(), &s).is_ok(),
            || "SNF verify".into(),
        )?;
    }
    Ok(
        "sl2: Z with images -1, 0, 1; C2*C2: Z^2 distinct; collision: false; det U, det V = +-1"
            .into(),
    )
}

fn c8_embedding() -> Outcome {
    let mut pairs = 0;
    for name in ALGEBRAS.iter().chain(["empty.alg"].iter()) {
        let out = cli_run(&["embed-check", "--algebra", name]);
        ensure(out.code == 0, || format!("{name}: {}", out.stdout))?;
        let r = pbw::embed_check(&format::parse_algebra(&fixture(name)).unwrap().algebra).unwrap();
        ensure(r.passed(), || format!("{name}: {r:?}"))?;
        pairs += r.pairs_checked;
    }
    Ok(format!("all fixtures embed; {pairs} ordered pairs checked"))
}

fn c9_psi() -> Outcome {
    let mut checked = 0;
    for name in ["c2c2_vars.alg", "free3_abelian.alg"] {
        let out = cli_run(&["psi-check", "--algebra", name, "--max-len", "5"]);
        ensure(
            out.code == 0 && out.stdout.contains("pass: 0 violations"),
            || format!("{name}: {}", out.stdout),
        )?;
        let alg = load(name);
        let (g, degs) = (alg.group(), alg.degrees());
        for len in 0..=5 {
            for idx in words(alg.dim(), len) {
                let outside = freelie::alpha_map(g, degs, &idx).unwrap() == AlphaValue::OutsideS;
                ensure(outside != degree_set_commutes(degs, g, &idx), || {
                    format!("{name}: alpha at {idx:?}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!(
        "0 violations; alpha agrees with pairwise commutation on {checked} tuples"
    ))
}

/// Adds 1 to one structure constant `c_{ij}^k` (possibly zero) of sl2.
fn mutate_sl2(i: usize, j: usize, k: usize) -> GradedLieAlgebra {
    let base = load("sl2.alg");
    let mut entries: Vec<BracketEntry> = Vec::new();
    for a in 0..3 {
        for b in a + 1..3 {
            let mut v = base.bracket_basis(a, b);
            if (a, b) == (i, j) {
                v.add_term(k, Q::one());
            }
            entries.push(BracketEntry {
                i: a,
                j: b,
                terms: v.iter().map(|(&k, c)| (k, c.clone())).collect(),
            });
        }
    }
    GradedLieAlgebra::new(
        base.group().clone(),
        base.names().to_vec(),
        base.degrees().to_vec(),
        entries,
    )
    .unwrap()
}

fn c10_negativity() -> Outcome {
    let base = load("sl2.alg");
    let name = |i: usize| base.name(i).to_string();
    let mut survivors = Vec::new();
    let mut caught = 0;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        for k in 0..3 {
            let old = base.bracket_basis(i, j).coeff(&k);
            let alg = mutate_sl2(i, j, k);
            let report = alg.validate();
            let jac = report.check("jacobi").unwrap();
            if jac.passed {
                let verdict = match report.checks.iter().find(|c| !c.passed) {
                    Some(c) => format!("rejected by {}", c.name),
                    None => "accepted".to_string(),
                };
                survivors.push(format!(
                    "[{}, {}] coefficient of {} ({} -> {}, {verdict})",
                    name(i),
                    name(j),
                    name(k),
                    old,
                    &old + Q::one()
                ));
            } else {
                ensure(jac.witness.as_ref().is_some_and(|w| w.len() == 3), || {
                    "Jacobi failure without a triple".into()
                })?;
                caught += 1;
            }
        }
    }
    // degree mutation: h moved to degree 1 breaks [e, h] = -2e
    let mut degs = base.degrees().to_vec();
    degs[1] = GroupElement::FreeAbelian(vec![1]);
    let moved = base.regraded(base.group().clone(), degs).unwrap();
    let grading = moved.validate().check("grading").cloned().unwrap();
    ensure(!grading.passed && grading.witness.is_some(), || {
        "grading mutation not caught".into()
    })?;
    if survivors.is_empty() {
        Ok(format!(
            "all {caught} mutations give a Jacobi triple; degree mutation gives a grading witness"
        ))
    } else {
        Err(format!(
            "Jacobi still holds after +1 on: {}",
            survivors.join("; ")
        ))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "abelian C2*C2 example", c1_abelian_example),
        (2, "matrix units over the free group", c2_matrix_units),
        (3, "classical limit for sl2", c3_classical_limit),
        (4, "straightening is well defined", c4_confluence),
        (5, "graded PBW rank", c5_pbw_rank),
        (6, "graded Witt theorem", c6_witt),
        (7, "universal group and abelianization", c7_universal_group),
        (8, "embedding in the enveloping algebra", c8_embedding),
        (9, "psi is alpha-graded", c9_psi),
        (10, "validation negativity", c10_negativity),
    ];
    let mut unexpected = 0;
    for (n, title, f) in criteria {
        let start = std::time::Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(detail) => println!("PASS  {n:>2}  {title}: {detail} ({secs:.2}s)"),
            Err(detail) => {
                let known = KNOWN_FAILURES.iter().any(|&(k, d)| k == n && d == detail);
                println!(
                    "FAIL  {n:>2}  {title}: {detail}{} ({secs:.2}s)",
                    if known { " [known]" } else { "" }
                );
                if !known {
                    unexpected += 1;
                }
            }
        }
    }
    for &(k, _) in KNOWN_FAILURES {
        println!(
            "note: criterion {k} fails as stated; see the README section on known limitations"
        );
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
