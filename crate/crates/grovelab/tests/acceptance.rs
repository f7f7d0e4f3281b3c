//! Acceptance suite: fifteen criteria, one pass/fail line each.
//!
//! Runs without the libtest harness so every line is printed in order with
//! its timing. A criterion over its time budget fails. Criteria listed in
//! `EXPECTED_FAILURES` are reported as failures but do not fail the run.

use std::time::{Duration, Instant};

use grovelab::bush::{self, MultiGraph};
use grovelab::catalan::{self, Kind, Matching};
use grovelab::immanant::{self, BetaRule};
use grovelab::network::random::random_reduced;
use grovelab::network::CactusNetwork;
use grovelab::straighten;
use grovelab::verify::{self, Report};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria that fail for a recorded reason, with that reason.
const EXPECTED_FAILURES: &[(u32, &str)] = &[(
    10,
    "beta includes in-block pairs for degree-0 blocks, which the product identity (criterion 11) requires; \
     the single-representative rule reproduces the three-term example",
)];

type Check = fn() -> Result<String, String>;

fn from_report(r: grovelab::Result<Report>) -> Result<String, String> {
    match r {
        Ok(r) => match r.counterexample {
            None => Ok(r.summary),
            Some(c) => Err(format!("{}: {c}", r.summary)),
        },
        Err(e) => Err(e.to_string()),
    }
}

fn both(a: Result<String, String>, b: Result<String, String>) -> Result<String, String> {
    Ok(format!("{}; {}", a?, b?))
}

fn c1() -> Result<String, String> {
    let want = [1, 2, 5, 14, 42, 132, 429, 1430];
    for (n, &w) in (1..=8).zip(&want) {
        let got = catalan::enumerate(n, Kind::Dyck).map_err(|e| e.to_string())?.len();
        if got != w {
            return Err(format!("n = {n}: {got} paths, expected {w}"));
        }
    }
    Ok(format!("{want:?}"))
}

fn c2() -> Result<String, String> {
    let want = [3usize, 14, 84, 594];
    for (n, &w) in (2..=5).zip(&want) {
        let tc = catalan::all_matchings(n).iter().filter(|m| grovelab::crossings::is_k_noncrossing(m, 3)).count();
        let chains = straighten::count_standard(n, 2);
        let dim = straighten::dim_formula(n, 2).map_err(|e| e.to_string())?;
        if tc != w || chains != w || dim != num_bigint::BigUint::from(w) {
            return Err(format!("n = {n}: TC {tc}, chains {chains}, formula {dim}, expected {w}"));
        }
    }
    Ok(format!("{want:?}"))
}

fn c3() -> Result<String, String> {
    from_report(verify::rsk(5))
}

fn c4() -> Result<String, String> {
    from_report(verify::maxres(4))
}

fn c5() -> Result<String, String> {
    from_report(verify::confluence(3, 100, 200, 6, 2024))
}

fn c6() -> Result<String, String> {
    let y = CactusNetwork::builtin("y3").map_err(|e| e.to_string())?;
    let a = bush::alpha(&MultiGraph::simple(y.clone())).map_err(|e| e.to_string())?.to_string();
    let want_a = "1·(12|35|46) + 1·(13|24|56) + 1·(15|26|34)";
    if a != want_a {
        return Err(format!("α(Y) = {a}, expected {want_a}"));
    }
    let xi: Matching = "15|26|34".parse().map_err(|e: grovelab::Error| e.to_string())?;
    let b = bush::bush_value(&y, &xi).map_err(|e| e.to_string())?.to_string();
    if b != "a^2*c + a*b*c + a*c^2" {
        return Err(format!("B_15|26|34(Y) = {b}"));
    }
    Ok(format!("α(Y) = {a}; B = {b}"))
}

fn c7() -> Result<String, String> {
    let mut builtins = Vec::new();
    for name in ["y3", "fig3"] {
        builtins.push((name.to_string(), CactusNetwork::builtin(name).map_err(|e| e.to_string())?));
    }
    let a = from_report(verify::product(&builtins, "{y3, fig3}"))?;
    let b = from_report(verify::product(&verify::random_networks(3, 20, 5, 71), "20 random networks, n = 3"))?;
    let c = from_report(verify::product(&verify::random_networks(4, 20, 5, 72), "20 random networks, n = 4"))?;
    Ok(format!("{a}; {b}; {c}"))
}

fn c8() -> Result<String, String> {
    from_report(verify::a_coefficients(4))
}

fn c9() -> Result<String, String> {
    from_report(verify::lift(3, 5, 9))
}

fn c10() -> Result<String, String> {
    let mut selections = 0;
    for xi in catalan::tc_matchings(4) {
        for s in immanant::selections(&xi).map_err(|e| e.to_string())? {
            selections += 1;
            for rule in [BetaRule::Full, BetaRule::SingleRepresentative] {
                for q in s.terms(8, rule).map_err(|e| e.to_string())? {
                    if q.degree() != 6 {
                        return Err(format!("ξ = {xi}: |τ| + 2|T| = {} for {q}", q.degree()));
                    }
                }
            }
        }
    }
    let xi: Matching = "12|34|56".parse().map_err(|e: grovelab::Error| e.to_string())?;
    let got = immanant::set_notation_sum(&immanant::beta(&xi).map_err(|e| e.to_string())?);
    let want = "(∅,{2,4})+(∅,{2,6})+(∅,{4,6})";
    if got != want {
        return Err(format!("degree identity holds on {selections} selections of N(TC_4); β(12|34|56) = {got}, expected {want}"));
    }
    Ok(format!("degree identity on {selections} selections; β(12|34|56) = {got}"))
}

fn c11() -> Result<String, String> {
    both(from_report(verify::delta_product(3, None, 0)), from_report(verify::delta_product(4, Some(200), 11)))
}

fn c12() -> Result<String, String> {
    both(from_report(verify::plucker(3, 20, 12)), from_report(verify::plucker(4, 20, 13)))
}

fn c13() -> Result<String, String> {
    from_report(verify::grobner(4, 24, 13))
}

fn c14() -> Result<String, String> {
    let fig3 = CactusNetwork::builtin("fig3").map_err(|e| e.to_string())?;
    let want: Matching = "{(1,2),(3,11),(4,13),(5,12),(6,8),(7,9),(10,14)}".parse().map_err(|e: grovelab::Error| e.to_string())?;
    let got = fig3.medial_pairing();
    if got != want {
        return Err(format!("medial pairing {got}, expected {want}"));
    }
    Ok(format!("medial pairing {got}"))
}

fn c15() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut moves = 0;
    let mut graphs = 0;
    while moves < 50 {
        let n = rng.gen_range(3..=6);
        let mut net = random_reduced(&mut rng, n);
        graphs += 1;
        let tau = net.medial_pairing();
        for _ in 0..5 {
            let k = net.y_sites().len() + net.delta_sites().len();
            if k == 0 || moves == 50 {
                break;
            }
            net = net.yd_move_at(rng.gen_range(0..k)).map_err(|e| e.to_string())?;
            moves += 1;
            if net.medial_pairing() != tau {
                return Err(format!("move {moves} changed {tau} to {}", net.medial_pairing()));
            }
        }
        if graphs > 10_000 {
            return Err(format!("only {moves} applicable moves found"));
        }
    }
    Ok(format!("{moves} moves on {graphs} reduced networks"))
}

fn main() {
    let criteria: [(u32, &str, u64, Check); 15] = [
        (1, "Catalan counts n = 1..8", 5, c1),
        (2, "|TC_n| = chains = dimension formula, n = 2..5", 30, c2),
        (3, "φ_RSK = φ_res on TC_n, n ≤ 5", 60, c3),
        (4, "maximal resolution on TC_4", 60, c4),
        (5, "α confluence", 300, c5),
        (6, "α(Y) and B_15|26|34(Y) goldens", 1, c6),
        (7, "L_σ L_σ′ = Σ a B_ξ", 600, c7),
        (8, "a_coeff = splitting oracle on TC_4", 300, c8),
        (9, "triangularity on TC_3 and a-matrix rank 14", 120, c9),
        (10, "degree identity on N(TC_4) and β(12|34|56) example", 300, c10),
        (11, "Δ_I Δ_J = Σ F_τ,T", 600, c11),
        (12, "Plücker relations and r_P,Q vanish", 300, c12),
        (13, "leading terms, straightening, dimensions, evaluation rank", 600, c13),
        (14, "fig3 medial pairing golden", 1, c14),
        (15, "Y–Δ moves preserve the medial pairing", 30, c15),
    ];
    let mut unexpected = 0;
    let mut failed = 0;
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > Duration::from_secs(budget) => Err(format!("{msg}; over the {budget} s budget")),
            other => other,
        };
        let expected = EXPECTED_FAILURES.iter().find(|(e, _)| *e == id).map(|(_, why)| *why);
        match (&outcome, expected) {
            (Ok(msg), None) => println!("PASS {id:>2} {name} [{:.2} s]: {msg}", elapsed.as_secs_f64()),
            (Ok(msg), Some(_)) => {
                unexpected += 1;
                println!("PASS {id:>2} {name} [{:.2} s]: {msg} (listed as an expected failure)", elapsed.as_secs_f64());
            }
            (Err(msg), why) => {
                failed += 1;
                if why.is_none() {
                    unexpected += 1;
                }
                println!("FAIL {id:>2} {name} [{:.2} s]: {msg}", elapsed.as_secs_f64());
                if let Some(w) = why {
                    println!("     expected failure: {w}");
                }
            }
        }
    }
    println!("{} of 15 criteria pass", 15 - failed);
    if unexpected > 0 {
        std::process::exit(1);
    }
}
