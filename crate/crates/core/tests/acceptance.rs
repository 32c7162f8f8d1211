//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Each criterion combines the library suite behind `nsym verify cK` with a
//! runtime budget and, for the operator-algebra items, an oracle that
//! realizes `X = x` and `P = -i d/dx` (hbar = 1) on polynomials in one
//! variable and never touches the library's normal-ordering code.
//!
//! Several criteria are red because the computed values differ from the
//! published ones. The run succeeds when the red set is exactly
//! [`KNOWN_RED`]; a new failure or an unexpected pass both fail it.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use nsym::exact::{int, rat, GaussianRational, Rational};
use nsym::opalg::{self, OpGen, OpPoly};
use nsym::verify::{run_criterion, Report, SuiteOptions};
use num_traits::Zero;

const KNOWN_RED: [u8; 6] = [4, 10, 11, 12, 13, 14];

/// Runtime budget in seconds per criterion.
const BUDGET: [u64; 15] = [1, 1, 10, 1, 60, 1, 1, 30, 1, 30, 30, 5, 10, 1, 30];

// ---------------------------------------------------------------------------
// Differential-operator oracle

type Cx = GaussianRational;
/// Coefficients of `1, x, x^2, ...`.
type Fun = Vec<Cx>;

fn cx(re: Rational, im: Rational) -> Cx {
    GaussianRational::new(re, im)
}

fn trim(mut f: Fun) -> Fun {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    f
}

fn add(a: &Fun, b: &Fun) -> Fun {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|k| a.get(k).cloned().unwrap_or_else(Cx::zero) + b.get(k).cloned().unwrap_or_else(Cx::zero))
            .collect(),
    )
}

fn scale(c: &Cx, f: &Fun) -> Fun {
    trim(f.iter().map(|a| c.clone() * a.clone()).collect())
}

fn times_x(f: &Fun) -> Fun {
    if f.is_empty() {
        return Vec::new();
    }
    std::iter::once(Cx::zero()).chain(f.iter().cloned()).collect()
}

/// `-i d/dx`.
fn momentum(f: &Fun) -> Fun {
    let minus_i = cx(int(0), int(-1));
    trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| minus_i.clone() * a.clone() * Cx::from(int(k as i64)))
            .collect(),
    )
}

/// Applies a word of `P`, `X`, `I` (rightmost first).
fn apply_word(word: &[char], f: &Fun) -> Fun {
    word.iter().rev().fold(f.clone(), |g, c| match c {
        'P' => momentum(&g),
        'X' => times_x(&g),
        'I' => g,
        other => panic!("unknown letter {other}"),
    })
}

/// Signed, weighted sum of words applied to `f`.
fn apply_sum(terms: &[(Cx, Vec<char>)], f: &Fun) -> Fun {
    terms.iter().fold(Vec::new(), |acc, (c, w)| add(&acc, &scale(c, &apply_word(w, f))))
}

/// Average over all orderings, optionally with the permutation sign.
fn ordered_average(word: &[char], signed: bool) -> Vec<(Cx, Vec<char>)> {
    let n = word.len();
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let weight = rat(1, perms.len() as i64);
    perms
        .into_iter()
        .map(|p| {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let sign = if signed && inversions % 2 == 1 { -1 } else { 1 };
            (Cx::from(weight.clone() * int(sign)), p.iter().map(|&i| word[i]).collect())
        })
        .collect()
}

/// Applies a normal-ordered library operator with one index, hbar = 1.
fn apply_library(op: &OpPoly, f: &Fun) -> Fun {
    op.terms().fold(Vec::new(), |acc, (m, h)| {
        let c = h.iter().fold(Cx::zero(), |s, (_, a)| s + a.clone());
        let mut g = f.clone();
        for _ in 0..m.p_power(0) {
            g = momentum(&g);
        }
        for _ in 0..m.x_power(0) {
            g = times_x(&g);
        }
        add(&acc, &scale(&c, &g))
    })
}

fn test_functions() -> Vec<Fun> {
    (0..6)
        .map(|k| {
            let mut f = vec![Cx::zero(); k + 1];
            f[k] = Cx::from(int(1));
            f
        })
        .collect()
}

fn same_action(a: impl Fn(&Fun) -> Fun, b: impl Fn(&Fun) -> Fun) -> bool {
    test_functions().iter().all(|f| a(f) == b(f))
}

/// Reference operator `X^2 P^2 - 2i X P + k`.
fn published_quartic(k: Rational) -> Vec<(Cx, Vec<char>)> {
    vec![
        (Cx::from(int(1)), vec!['X', 'X', 'P', 'P']),
        (cx(int(0), int(-2)), vec!['X', 'P']),
        (Cx::from(k), vec![]),
    ]
}

fn letters(word: &[OpGen]) -> Vec<char> {
    word.iter()
        .map(|g| match g {
            OpGen::P(_) => 'P',
            OpGen::X(_) => 'X',
            OpGen::I(_) => 'I',
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Criteria

struct Verdict {
    passed: bool,
    detail: String,
}

fn from_report(r: &Report) -> Verdict {
    let failed: Vec<String> = r.checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.detail)).collect();
    Verdict {
        passed: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{} ({} checks)", r.title, r.checks.len())
        } else {
            failed.join(" | ")
        },
    }
}

fn with_oracle(mut v: Verdict, name: &str, ok: bool, detail: String) -> Verdict {
    v.passed &= ok;
    if !ok {
        v.detail = format!("{} | oracle {name}: {detail}", v.detail);
    }
    v
}

fn gvh_oracle(v: Verdict) -> Verdict {
    let first = [
        (Cx::from(rat(1, 2)), vec!['P', 'P', 'X', 'X']),
        (Cx::from(rat(1, 2)), vec!['X', 'X', 'P', 'P']),
    ];
    let sym: Vec<(Cx, Vec<char>)> = vec![(Cx::from(int(1)), vec!['P', 'X']), (Cx::from(int(1)), vec!['X', 'P'])];
    let second: Vec<(Cx, Vec<char>)> = sym
        .iter()
        .cartesian_product(&sym)
        .map(|((a, u), (b, w))| (a.clone() * b.clone() * Cx::from(rat(1, 4)), [u.clone(), w.clone()].concat()))
        .collect();
    let ok1 = same_action(|f| apply_sum(&first, f), |f| apply_sum(&published_quartic(int(-1)), f));
    let ok2 = same_action(|f| apply_sum(&second, f), |f| apply_sum(&published_quartic(rat(-1, 4)), f));
    with_oracle(v, "normal forms", ok1 && ok2, format!("first {ok1}, second {ok2}"))
}

fn quartic_oracle(v: Verdict) -> Verdict {
    let avg = ordered_average(&['P', 'P', 'X', 'X'], false);
    // X^2 P^2 and X P annihilate constants, so the average acts on 1 as kappa.
    let on_one = apply_sum(&avg, &vec![Cx::from(int(1))]);
    let kappa = on_one.first().cloned().unwrap_or_else(Cx::zero);
    let (q, lib_kappa, _) = nsym::verify::quartic_kappa();
    let shape = same_action(|f| apply_sum(&avg, f), |f| apply_sum(&published_quartic(kappa.re.clone()), f));
    let agree = same_action(|f| apply_sum(&avg, f), |f| apply_library(&q, f));
    let ok = kappa.im.is_zero() && shape && agree && lib_kappa == kappa;
    let mut v = with_oracle(v, "kappa", ok, format!("oracle {kappa}, library {lib_kappa}"));
    v.detail = format!("{}; kappa = {kappa}, published value -1/3", v.detail);
    v
}

fn grouping_oracle(v: Verdict) -> Verdict {
    let mut bad = Vec::new();
    for len in 1..=5 {
        for w in std::iter::repeat_n([OpGen::P(0), OpGen::X(0)], len).multi_cartesian_product() {
            let avg = ordered_average(&letters(&w), false);
            let q = opalg::quantize_sym(&w);
            if !same_action(|f| apply_sum(&avg, f), |f| apply_library(&q, f)) {
                bad.push(w.iter().join(" "));
            }
        }
    }
    with_oracle(v, "symmetrization", bad.is_empty(), bad.join(", "))
}

fn antisym_oracle(v: Verdict) -> Verdict {
    let lambda = apply_sum(&ordered_average(&['P', 'X'], true), &vec![Cx::from(int(1))]);
    let lambda = lambda.first().cloned().unwrap_or_else(Cx::zero);
    let lib = opalg::quantize_antisym(&[OpGen::P(0), OpGen::X(0)]);
    let agree = same_action(
        |f| scale(&lambda, f),
        |f| apply_library(&lib, f),
    );
    let cubic = apply_sum(&ordered_average(&['P', 'X', 'I'], true), &vec![Cx::from(int(1))]);
    let cubic_lib = opalg::quantize_antisym(&[OpGen::P(0), OpGen::X(0), OpGen::I(0)]);
    let cubic_agree = same_action(
        |f| apply_sum(&ordered_average(&['P', 'X', 'I'], true), f),
        |f| apply_library(&cubic_lib, f),
    );
    let half = Cx::from(rat(1, 2));
    let mut v = with_oracle(v, "library agreement", agree && cubic_agree, format!("pair {agree}, cubic {cubic_agree}"));
    v.passed &= lambda == half && cubic.is_empty();
    v.detail = format!(
        "{}; oracle lambda = {lambda} vs published 1/2; oracle Q(P1 ^ X1 ^ I1) on 1 = {}",
        v.detail,
        cubic.first().map_or("0".into(), |c| c.to_string())
    );
    v
}

fn criterion(k: u8, opts: &SuiteOptions) -> (Verdict, Duration) {
    let start = Instant::now();
    let report = run_criterion(k, opts).expect("criterion runs");
    let v = from_report(&report);
    let v = match k {
        1 => gvh_oracle(v),
        2 => quartic_oracle(v),
        3 => grouping_oracle(v),
        4 => antisym_oracle(v),
        _ => v,
    };
    (v, start.elapsed())
}

fn main() -> ExitCode {
    let opts = SuiteOptions::default();
    let mut red = BTreeSet::new();
    for k in 1..=15u8 {
        let (mut v, elapsed) = criterion(k, &opts);
        let budget = Duration::from_secs(BUDGET[usize::from(k) - 1]);
        if elapsed > budget {
            v.passed = false;
            v.detail = format!("{} | over budget {budget:?}", v.detail);
        }
        let tag = if v.passed { "PASS" } else { "FAIL" };
        println!("{tag} criterion {k:>2} ({:.2}s): {}", elapsed.as_secs_f64(), v.detail);
        if !v.passed {
            red.insert(k);
        }
    }
    let known: BTreeSet<u8> = KNOWN_RED.into_iter().collect();
    println!("red criteria: {red:?}; documented red set: {known:?}");
    if red == known {
        ExitCode::SUCCESS
    } else {
        println!("acceptance red set changed");
        ExitCode::FAILURE
    }
}
