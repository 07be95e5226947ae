//! Acceptance criteria, one PASS/FAIL line each. Every comparison is exact.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use albert::random::Sampler;
use albert::suites::{self, Check, Tally};

const SEED: u64 = 20_240_601;

struct Outcome {
    checks: Vec<Check>,
    limit: Option<Duration>,
    elapsed: Duration,
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Vec<Check>) -> Outcome {
    let start = Instant::now();
    let checks = f();
    Outcome { checks, limit, elapsed: start.elapsed() }
}

fn tally(f: impl FnOnce(&mut Tally, &mut Sampler)) -> Vec<Check> {
    let mut t = Tally::new();
    let mut s = Sampler::new(SEED);
    f(&mut t, &mut s);
    t.checks
}

type Criterion = (&'static str, Box<dyn FnOnce() -> Outcome>);

fn criteria() -> Vec<Criterion> {
    vec![
        (
            "U-operator closed forms on J(M3(Q),2) and J(D,3), 100 instances each",
            Box::new(|| {
                timed(Some(Duration::from_secs(30)), || {
                    suites::uop_closed_forms(SEED, 100)
                        .checks
                        .into_iter()
                        .filter(|c| c.name.contains("(d,e,f)"))
                        .collect()
                })
            }),
        ),
        (
            "similitude law and fundamental identity, 100 pairs per construction",
            Box::new(|| timed(None, || tally(|t, s| suites::u_identities(t, s, 100)))),
        ),
        (
            "Newton norm equals closed-form norm, 200 elements per construction",
            Box::new(|| timed(None, || tally(|t, s| suites::newton_oracle(t, s, 200)))),
        ),
        (
            "jp_word evaluates to J_p, 25 pairs per backend",
            Box::new(|| timed(None, || tally(|t, s| suites::jp_words(t, s, 25)))),
        ),
        (
            "ia_word equals I_a, unexpanded and fully expanded, 25 each",
            Box::new(|| timed(None, || tally(|t, s| suites::ia_words(t, s, 25)))),
        ),
        (
            "Wedderburn data and two-commutator cubes, 10 elements of M3(Q)",
            Box::new(|| timed(None, || tally(|t, s| suites::wedderburn(t, s, 10)))),
        ),
        (
            "chi round trip and reduction to isometries, 25 each",
            Box::new(|| timed(None, || tally(|t, s| suites::similarity_reductions(t, s, 25)))),
        ),
        (
            "phi_p words for 25 symmetric factorizations; U(a,0) closed form on 100",
            Box::new(|| {
                timed(None, || {
                    tally(|t, s| {
                        suites::phi_words(t, s, 25);
                        suites::second_u_closed_form(t, s, 100);
                    })
                })
            }),
        ),
        (
            "fixed vectors in A0 for 100 automorphisms; fixed subalgebras of dims 9 and 3",
            Box::new(|| timed(None, || suites::fixedpoint(SEED, 100).checks)),
        ),
        (
            "hexagon relations, 50 per relation; associativity on 200 triples",
            Box::new(|| timed(Some(Duration::from_secs(120)), || suites::hexagon(SEED, 50).checks)),
        ),
        (
            "octonions: flexible, Moufang, multiplicative norm on 100 pairs; reflections",
            Box::new(|| timed(None, || suites::composition(SEED, 100).checks)),
        ),
        (
            "sampled anisotropy of D and J(D,3) on 10^4 elements",
            Box::new(|| timed(None, || suites::anisotropy(SEED, 10_000).checks)),
        ),
    ]
}

/// Criteria that cannot hold for the shipped data. They still run and print
/// FAIL; they are excluded from the exit status so the other test targets run.
const KNOWN_RED: &[(usize, &str)] = &[(
    12,
    "J(D,3) over Q is not a division algebra: reduced norms of D cover Q*, and the \
     sample contains a nonzero element of norm 0",
)];

fn main() -> ExitCode {
    let mut unexpected = 0;
    let mut red = 0;
    for (k, (name, f)) in criteria().into_iter().enumerate() {
        let num = k + 1;
        let known = KNOWN_RED.iter().find(|(n, _)| *n == num).map(|(_, why)| *why);
        let (ok, detail) = match std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)) {
            Ok(o) => {
                let within = o.limit.is_none_or(|l| o.elapsed <= l);
                let ok = !o.checks.is_empty() && o.checks.iter().all(Check::ok) && within;
                let (p, n) = o.checks.iter().fold((0, 0), |(p, n), c| (p + c.passed, n + c.total));
                let mut d = format!(" [{p}/{n} exact, {:.1}s]", o.elapsed.as_secs_f64());
                for c in o.checks.iter().filter(|c| !c.ok()) {
                    d.push_str(&format!("\n    failed: {} ({}/{})", c.name, c.passed, c.total));
                }
                if !within {
                    d.push_str(&format!("\n    over the time limit of {:?}", o.limit.expect("set")));
                }
                for note in o.checks.iter().filter_map(|c| c.note.as_ref()) {
                    d.push_str(&format!("\n    note: {note}"));
                }
                (ok, d)
            }
            Err(_) => (false, " [panicked]".to_string()),
        };
        let status = if ok { "PASS" } else { "FAIL" };
        println!("criterion {num:>2} {status}: {name}{detail}");
        if !ok {
            red += 1;
            match known {
                Some(why) => println!("    known red: {why}"),
                None => unexpected += 1,
            }
        }
    }
    println!("acceptance: {} of 12 criteria pass", 12 - red);
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
