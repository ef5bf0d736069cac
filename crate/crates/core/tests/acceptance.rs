//! The acceptance criteria, one PASS/FAIL line each.
//!
//! A criterion whose printed claim is contradicted by computation reports
//! FAIL with the measured values. The run only exits nonzero when a
//! measured fact differs from what is known, so a documented discrepancy
//! does not break the build but is never reported as a pass.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::Check;
use twperm::report::{compute_row, paper_rows};
use twperm::subsets::Colex;
use twperm::*;

/// How a criterion ended.
enum Verdict {
    Pass(String),
    /// The printed claim does not hold; the measured values are as expected.
    KnownFail(String),
    Fail(String),
}

fn within(limit: Duration, start: Instant, check: Check) -> Verdict {
    let elapsed = start.elapsed();
    match check {
        Ok(_) if elapsed > limit => Verdict::Fail(format!("took {elapsed:.1?}, limit {limit:?}")),
        Ok(s) => Verdict::Pass(format!("{s}; {elapsed:.2?}")),
        Err(e) => Verdict::Fail(e),
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn example5_trace() -> Verdict {
    let start = Instant::now();
    let check = (|| -> Check {
        let state = fixtures::decoder("asl3_2").map_err(err)?;
        let w = Word::parse("[4,7,1,6,7,8,2,5|4,4,6,1,8,3,5,2]", 8).map_err(err)?;
        let r = state.decode(&w).map_err(err)?;
        if r.log() != fixtures::EXAMPLE5_TRACE {
            return Err(format!("log differs:\n{}", r.log()));
        }
        let g = r.decoded().ok_or("decoding failed")?.to_string();
        if g != "(1,4,6,8,5,3)(2,7)" {
            return Err(format!("decoded {g}"));
        }
        Ok(format!("4 attempts, decoded {g}"))
    })();
    within(Duration::from_secs(1), start, check)
}

fn table2() -> Verdict {
    let start = Instant::now();
    let check = (|| -> Check {
        let mut out = Vec::new();
        for (key, rep, tw, b) in [("s6", 4, 8, 5), ("a6", 6, 8, 4), ("asl3_2", 8, 12, 4)] {
            let code = fixtures::code(key).map_err(err)?;
            let got = (
                code.delta_rep().map_err(err)?.finite(),
                code.delta_tw().map_err(err)?.finite(),
                code.g1().base_size().map_err(err)?,
            );
            if got != (Some(rep), Some(tw), b) {
                return Err(format!(
                    "{key}: (δ_rep, δ_tw, b) = {got:?}, expected ({rep}, {tw}, {b})"
                ));
            }
            out.push(format!("{key} ({rep},{tw}) b={b}"));
        }
        Ok(out.join(", "))
    })();
    within(Duration::from_secs(30), start, check)
}

fn table1() -> Verdict {
    let start = Instant::now();
    let check = (|| -> Check {
        let paper = paper_rows().map_err(err)?;
        for key in fixtures::TABLE1_KEYS {
            let p = paper.iter().find(|r| r.key == *key).ok_or("missing printed row")?;
            // compute_row also verifies the UBB rows are bases of strength r'
            let c = compute_row(1, key).map_err(|e| format!("{key}: {e}"))?;
            if c.cells() != p.cells() {
                return Err(format!("{key}: computed {:?}, printed {:?}", c.cells(), p.cells()));
            }
            if c.delta_rep != c.delta_tw {
                return Err(format!("{key}: δ_rep {} ≠ δ_tw {}", c.delta_rep, c.delta_tw));
            }
        }
        Ok("six rows match; UBBs certified exhaustively".into())
    })();
    within(Duration::from_secs(300), start, check)
}

fn example3() -> Verdict {
    let start = Instant::now();
    let check = (|| -> Check {
        let g = fixtures::group("pgl2_7").map_err(err)?;
        let u = fixtures::ubb("pgl2_7").map_err(err)?;
        u.check_bases(&g).map_err(err)?;
        if !u.verify_strength_at(8, 2, ubb::STRENGTH_BUDGET).map_err(err)?.holds() {
            return Err("UBB does not have strength 2".into());
        }
        let mut bases = 0;
        for s in Colex::new(8, 3) {
            let b = Base::new(s.iter().map(|x| x + 1).collect()).map_err(err)?;
            if !g.is_base(&b).map_err(err)? {
                return Err(format!("{:?} is not a base", b.points()));
            }
            bases += 1;
        }
        Ok(format!("strength 2, {bases}/56 3-subsets are bases"))
    })();
    within(Duration::from_secs(5), start, check)
}

/// Measured structure of one `G_k(p)`, compared with the printed claims.
fn gkp_instance(
    p: u32,
    k: usize,
    claims: &mut Vec<String>,
    notes: &mut Vec<String>,
) -> std::result::Result<(), String> {
    let g = build_gkp(p, k).map_err(err)?;
    let grp = g.group();
    let order = grp.order().map_err(err)?;
    let d = grp.min_distance().map_err(err)?.finite().unwrap();
    let b = grp.base_size().map_err(err)?;
    let nominal_order = (p as usize).pow(k as u32 + 1);
    let nominal_d = (p as usize).pow(k as u32) - p as usize;
    let tag = format!("({p},{k})");
    // what the group actually is; any deviation here is a real failure
    let expected = if (p, k) == (2, 3) {
        (32, 4)
    } else {
        (nominal_order, nominal_d)
    };
    if (order, d) != expected || b != 2 {
        return Err(format!(
            "{tag}: measured |G|={order}, d={d}, b={b}, expected {expected:?}, b=2"
        ));
    }
    if order != nominal_order {
        claims.push(format!("{tag} |G|={order}≠{nominal_order}"));
    }
    if d != nominal_d {
        claims.push(format!("{tag} d={d}≠{nominal_d}"));
    }
    for j in 2..=k {
        let base = g.canonical_base(j).map_err(err)?;
        let is_base = grp.is_base(&base).map_err(err)?;
        let expected = !((p, k, j) == (2, 3, 2));
        if is_base != expected {
            return Err(format!("{tag}: {{(1,0),(1,e_{j})}} base = {is_base}"));
        }
        if !is_base {
            claims.push(format!("{tag} {{(1,0),(1,e_{j})}} not a base"));
        }
    }
    let cert = gkp_saxl_connected(&g).map_err(err)?;
    if cert.graph.components().len() != 1 {
        return Err(format!("{tag}: Saxl graph disconnected"));
    }
    let u = gkp_ubb(&g).map_err(err)?;
    if u.ubb.len() != u.r_prime + 1 || !u.ubb.is_pairwise_disjoint() {
        return Err(format!(
            "{tag}: matching UBB has {} rows for r'={}",
            u.ubb.len(),
            u.r_prime
        ));
    }
    if !u
        .ubb
        .verify_strength_at(g.degree(), u.r_prime, ubb::STRENGTH_BUDGET)
        .map_err(err)?
        .holds()
    {
        return Err(format!("{tag}: matching UBB lacks strength {}", u.r_prime));
    }
    if p % 2 == 1 && !u.closed_form_agrees() {
        return Err(format!(
            "{tag}: closed form {} ≠ r'+1 = {}",
            u.closed_form_size,
            u.r_prime + 1
        ));
    }
    if p == 2 {
        notes.push(format!(
            "{tag} p=2: r'+1={} vs closed form {}",
            u.r_prime + 1,
            u.closed_form_size
        ));
    }
    Ok(())
}

fn gkp_structure() -> Verdict {
    let start = Instant::now();
    let mut claims = Vec::new();
    let mut notes = Vec::new();
    for (p, k) in [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2)] {
        if let Err(e) = gkp_instance(p, k, &mut claims, &mut notes) {
            return Verdict::Fail(e);
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(120) {
        return Verdict::Fail(format!("took {elapsed:.1?}, limit 2 min"));
    }
    let flagged = notes.join("; ");
    if claims.is_empty() {
        Verdict::Pass(format!("flagged: {flagged}; {elapsed:.2?}"))
    } else {
        Verdict::KnownFail(format!(
            "B_3 has order 4 over F_2, so {}; flagged: {flagged}; {elapsed:.2?}",
            claims.join(", ")
        ))
    }
}

fn gkp_codes() -> Verdict {
    let start = Instant::now();
    let check = (|| -> Check {
        let mut out = Vec::new();
        for (p, k, target) in [(2, 2, 6), (3, 2, 24)] {
            let g = build_gkp(p, k).map_err(err)?;
            // exhausting the search budget is an error, never a pass
            let code = gkp_twisted_code(&g).map_err(|e| format!("({p},{k}): {e}"))?;
            let d = code.delta_tw().map_err(err)?.finite();
            if d != Some(target) || code.lambda() != p as usize {
                return Err(format!("({p},{k}): δ_tw {d:?}, λ {}", code.lambda()));
            }
            out.push(format!("({p},{k}) δ_tw={target}"));
        }
        Ok(out.join(", "))
    })();
    within(Duration::from_secs(600), start, check)
}

fn monte_carlo() -> Verdict {
    let start = Instant::now();
    let mut slowest = Duration::ZERO;
    let mut out = Vec::new();
    for key in fixtures::code_keys() {
        let t = Instant::now();
        let state = match fixtures::decoder(key) {
            Ok(s) => s,
            Err(e) => return Verdict::Fail(format!("{key}: {e}")),
        };
        let spec = ChannelSpec {
            errors: state.params().r_tw,
            seed: 20_240_601,
            trials: 10_000,
        };
        let stats = match simulate(&state, spec, Mode::Guaranteed) {
            Ok(r) => r.stats,
            Err(e) => return Verdict::Fail(format!("{key}: {e}")),
        };
        if stats.success_rate() != 1.0 || stats.max_attempts > state.max_attempts() {
            return Verdict::Fail(format!("{key}: {stats}"));
        }
        let elapsed = t.elapsed();
        if elapsed > Duration::from_secs(300) {
            return Verdict::Fail(format!("{key} took {elapsed:.1?}"));
        }
        slowest = slowest.max(elapsed);
        out.push(format!(
            "{key} e={} max {}/{}",
            spec.errors,
            stats.max_attempts,
            state.max_attempts()
        ));
    }
    Verdict::Pass(format!(
        "10^4 trials each, all decoded: {}; slowest code {slowest:.2?}, total {:.2?}",
        out.join(", "),
        start.elapsed()
    ))
}

type NamedCheck = (&'static str, fn() -> Check);

fn properties() -> Verdict {
    let start = Instant::now();
    let checks: [NamedCheck; 6] = [
        ("grid", common::repetition_grid),
        ("distance", common::distance_formula_pgl27),
        ("fixtures", common::fixture_dominance),
        ("conjugates", || common::random_conjugate_tuples(100, 2024)),
        ("bk", || {
            common::bk_closed_forms(&[(2, 2), (2, 3), (3, 2), (3, 3), (5, 2)])
        }),
        ("matching", || common::matching_strength(60, 77)),
    ];
    let mut out = Vec::new();
    for (name, f) in checks {
        match f() {
            Ok(s) => out.push(format!("{name}: {s}")),
            Err(e) => return Verdict::Fail(format!("{name}: {e}")),
        }
    }
    Verdict::Pass(format!("{}; {:.2?}", out.join(", "), start.elapsed()))
}

fn main() -> ExitCode {
    // keep the harness quiet when invoked with libtest flags
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let criteria: [(usize, fn() -> Verdict); 8] = [
        (1, example5_trace),
        (2, table2),
        (3, table1),
        (4, example3),
        (5, gkp_structure),
        (6, gkp_codes),
        (7, monte_carlo),
        (8, properties),
    ];
    let mut hard_failures = 0;
    for (n, f) in criteria {
        match f() {
            Verdict::Pass(s) => println!("criterion {n}: PASS ({s})"),
            Verdict::KnownFail(s) => println!("criterion {n}: FAIL (as printed; measured values confirmed: {s})"),
            Verdict::Fail(s) => {
                hard_failures += 1;
                println!("criterion {n}: FAIL ({s})");
            }
        }
    }
    if hard_failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
