//! Seeded identity suites. Each suite returns one line per case so that the
//! CLI and the acceptance harness report the same thing.

use std::fmt;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boxball::{all_states, calibrate_conservation, evolve_carrier, evolve_leftmost, random_state, Capacity};
use crate::crystal::{
    cocharge, comb_r_jdt, comb_r_tropical, energy_with, has_partition_weight, reading_word, CochargeRule,
    EnergyConvention, OneRowTableau, SubstitutionOrder,
};
use crate::exactring::{Poly, RationalExpr, Ring, VarId};
use crate::factorize::{orbit_match, skew_schur_certificate, tnn_check, whirl_factorize};
use crate::hopf::{antipode_axiom_check, axiom_suite};
use crate::linalg::rank;
use crate::lsym::{
    extract_e, loop_e, loop_powersum, loop_schur_tableaux, mn_expand, random_point, ssyt_enumerate, whirl_product,
    LoopVarArray, Partition, SkewShape,
};
use crate::rmatrix::{swap_bindings, verify_alternant_ratio, verify_whirl_commutation, words_agree, CheckMode, PermWord};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_POINTS: usize = 20;

pub const SUITES: [&str; 12] = [
    "braid",
    "commutation",
    "invariance",
    "jacobian",
    "mn",
    "alternant",
    "hopf",
    "comb-r",
    "energy",
    "boxball",
    "factor",
    "tnn",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub points: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: DEFAULT_SEED, points: DEFAULT_POINTS }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

impl CaseResult {
    fn new(label: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CaseResult { label: label.into(), passed, detail: detail.into() }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: Vec<CaseResult>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.passed).count()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cases {
            let tag = if c.passed { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{tag} {}: {}", self.name, c.label)?;
            } else {
                writeln!(f, "{tag} {}: {} ({})", self.name, c.label, c.detail)?;
            }
        }
        write!(f, "{}: {} case(s), {} failure(s)", self.name, self.cases.len(), self.failures())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite {0:?}; expected one of {SUITES:?} or all")]
pub struct UnknownSuite(pub String);

pub fn run_suite(name: &str, cfg: SuiteConfig) -> Result<SuiteReport, UnknownSuite> {
    let start = Instant::now();
    let (name, cases) = match name {
        "braid" => ("braid", braid(cfg)),
        "commutation" => ("commutation", commutation(cfg)),
        "invariance" => ("invariance", invariance()),
        "jacobian" => ("jacobian", jacobian(cfg)),
        "mn" => ("mn", murnaghan_nakayama()),
        "alternant" => ("alternant", alternant(cfg)),
        "hopf" => ("hopf", hopf()),
        "comb-r" => ("comb-r", comb_r()),
        "energy" => ("energy", energy_vs_cocharge()),
        "boxball" => ("boxball", boxball(cfg)),
        "factor" => ("factor", factor(cfg)),
        "tnn" => ("tnn", tnn(cfg)),
        other => return Err(UnknownSuite(other.to_string())),
    };
    Ok(SuiteReport { name, cases, elapsed: start.elapsed() })
}

/// `"all"` or a single suite name.
pub fn run_suites(which: &str, cfg: SuiteConfig) -> Result<Vec<SuiteReport>, UnknownSuite> {
    if which == "all" {
        SUITES.iter().map(|s| run_suite(s, cfg)).collect()
    } else {
        run_suite(which, cfg).map(|r| vec![r])
    }
}

fn word(s: &str) -> PermWord {
    PermWord::parse(s).expect("well-formed word")
}

fn identity_checks(m: u32) -> Vec<(PermWord, PermWord)> {
    let mut out: Vec<(PermWord, PermWord)> = (1..m).map(|k| (PermWord::new(vec![k, k]).expect("k ≥ 1"), word(""))).collect();
    for k in 1..m.saturating_sub(1) {
        out.push((PermWord::new(vec![k, k + 1, k]).expect("k ≥ 1"), PermWord::new(vec![k + 1, k, k + 1]).expect("k ≥ 1")));
    }
    for a in 1..m {
        for b in a + 2..m {
            out.push((PermWord::new(vec![a, b]).expect("a ≥ 1"), PermWord::new(vec![b, a]).expect("b ≥ 1")));
        }
    }
    out
}

/// `s_k² = id`, `s_k s_{k+1} s_k = s_{k+1} s_k s_{k+1}`, far commutation.
pub fn braid(cfg: SuiteConfig) -> Vec<CaseResult> {
    let mut out = Vec::new();
    for n in 1..=2 {
        for (a, b) in identity_checks(3) {
            let ok = words_agree(n, 3, &a, &b, CheckMode::Symbolic).unwrap_or(false);
            out.push(CaseResult::new(format!("n={n} m=3 {a} = {b}"), ok, "symbolic"));
        }
    }
    for n in 3..=4 {
        for (a, b) in identity_checks(4) {
            let mode = CheckMode::Random { points: cfg.points, seed: cfg.seed };
            let ok = words_agree(n, 4, &a, &b, mode).unwrap_or(false);
            out.push(CaseResult::new(format!("n={n} m=4 {a} = {b}"), ok, format!("{} exact random points", cfg.points)));
        }
    }
    out
}

fn commutation_words(m: u32) -> Vec<PermWord> {
    match m {
        2 => vec![word("s1")],
        _ => ["s1", "s2", "s1 s2", "s2 s1", "s1 s2 s1"].into_iter().map(word).collect(),
    }
}

/// `M(x_1)⋯M(x_m) = M(w x_1)⋯M(w x_m)`.
pub fn commutation(cfg: SuiteConfig) -> Vec<CaseResult> {
    let mut out = Vec::new();
    for m in 2..=3 {
        for w in commutation_words(m) {
            let ok = verify_whirl_commutation(2, m, &w, CheckMode::Symbolic).unwrap_or(false);
            out.push(CaseResult::new(format!("n=2 m={m} w={w}"), ok, "symbolic"));
        }
    }
    for w in commutation_words(3) {
        let mode = CheckMode::Random { points: cfg.points, seed: cfg.seed };
        let ok = verify_whirl_commutation(3, 3, &w, mode).unwrap_or(false);
        out.push(CaseResult::new(format!("n=3 m=3 w={w}"), ok, format!("{} exact random points", cfg.points)));
    }
    out
}

/// Every `e_k^{(r)}` is fixed by every adjacent swap, symbolically.
pub fn invariance() -> Vec<CaseResult> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for m in 2..=3 {
            let vars = LoopVarArray::symbolic(n, m);
            for s in 1..m {
                let bind = swap_bindings(n, s);
                let mut bad = Vec::new();
                for k in 1..=m as i64 {
                    for r in 1..=n as i64 {
                        let e = RationalExpr::from_poly(loop_e(&vars, k, r));
                        let ok = e.substitute(&bind).map(|img| img.rational_eq(&e)).unwrap_or(false);
                        if !ok {
                            bad.push(format!("e_{k}^({r})"));
                        }
                    }
                }
                let detail = if bad.is_empty() { format!("{} generators", m * n) } else { bad.join(", ") };
                out.push(CaseResult::new(format!("n={n} m={m} s{s}"), bad.is_empty(), detail));
            }
        }
    }
    out
}

/// The `nm × nm` Jacobian of `{e_k^{(r)}}` in the `x_i^{(j)}` has full rank
/// at a random point.
pub fn jacobian(cfg: SuiteConfig) -> Vec<CaseResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    for n in 1..=3 {
        for m in 1..=3 {
            let vars = LoopVarArray::symbolic(n, m);
            let point = random_point(n, m, &mut rng).as_point();
            let gens: Vec<Poly> = (1..=m as i64).flat_map(|k| (1..=n as i64).map(move |r| (k, r))).map(|(k, r)| loop_e(&vars, k, r)).collect();
            let xs: Vec<VarId> = (1..=m).flat_map(|i| (1..=n).map(move |j| VarId::new(i, j as i64, n))).collect();
            let jac: Vec<Vec<BigRational>> = gens
                .iter()
                .map(|g| xs.iter().map(|x| g.partial_derivative(x).eval(|v| point[v].clone())).collect())
                .collect();
            let rk = rank(&jac);
            out.push(CaseResult::new(format!("n={n} m={m}"), rk == (n * m) as usize, format!("rank {rk} of {}", n * m)));
        }
    }
    out
}

/// `p̃_k · s_λ^{(r)} = Σ_μ (−1)^{ht(μ/λ)} s_μ^{(r)}` over ribbons of size `kn`.
pub fn murnaghan_nakayama() -> Vec<CaseResult> {
    let mut out = Vec::new();
    for n in 1..=3u32 {
        for m in 1..=3u32 {
            let vars = LoopVarArray::symbolic(n, m);
            for k in (1..).take_while(|k| k * n <= 6) {
                let p = loop_powersum(&vars, k);
                let mut bad = Vec::new();
                let mut count = 0;
                for lam in Partition::in_box(2, 2) {
                    let terms = mn_expand(n, k, &lam);
                    for r in 1..=n as i64 {
                        count += 1;
                        let lhs = p.times(&loop_schur_tableaux(&vars, &SkewShape::straight(lam.clone()), r));
                        let rhs = terms.iter().fold(Poly::zero(), |acc, (mu, sign)| {
                            let s = loop_schur_tableaux(&vars, &SkewShape::straight(mu.clone()), r);
                            if *sign > 0 {
                                acc.plus(&s)
                            } else {
                                acc.minus(&s)
                            }
                        });
                        if lhs != rhs {
                            bad.push(format!("λ={lam} r={r}"));
                        }
                    }
                }
                let detail = if bad.is_empty() { format!("{count} identities") } else { bad.join("; ") };
                out.push(CaseResult::new(format!("n={n} m={m} k={k}"), bad.is_empty(), detail));
            }
        }
    }
    out
}

/// `a^{(r)}_{λ+δ} = s_λ^{(r+1−m)} a^{(r)}_δ` at exact random points.
pub fn alternant(cfg: SuiteConfig) -> Vec<CaseResult> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for m in 2..=3 {
            for lam in Partition::in_box(m as usize, 2) {
                let ok = (1..=n as i64).all(|r| verify_alternant_ratio(n, m, &lam, r, cfg.points.min(5), cfg.seed).unwrap_or(false));
                out.push(CaseResult::new(format!("n={n} m={m} λ={lam}"), ok, "all colors"));
            }
        }
    }
    out
}

/// Coassociativity, counit and antipode on generators `i ≤ 3`, `n ≤ 3`,
/// plus the unsigned antipode failing at `i = 1`.
pub fn hopf() -> Vec<CaseResult> {
    let mut out = Vec::new();
    for n in 1..=3 {
        let fails = axiom_suite(n, 3, true);
        let detail = fails.iter().map(|(g, a)| format!("{g}: {a}")).collect::<Vec<_>>().join(", ");
        out.push(CaseResult::new(format!("n={n} i≤3 signed"), fails.is_empty(), detail));
    }
    let pin = (1..=3).all(|n| (1..=n as i64).all(|k| !antipode_axiom_check(1, k, n, false) && antipode_axiom_check(1, k, n, true)));
    out.push(CaseResult::new("i=1 fixes the sign", pin, "unsigned fails, signed passes"));
    out
}

/// The two R-matrix routes agree and are involutive, exhaustively.
pub fn comb_r() -> Vec<CaseResult> {
    let mut out = Vec::new();
    for n in 1..=3 {
        let rows: Vec<OneRowTableau> = (0..=4).flat_map(|l| OneRowTableau::all(n, l)).collect();
        let mut bad = Vec::new();
        for b1 in &rows {
            for b2 in &rows {
                let t = comb_r_tropical(b1, b2);
                let j = comb_r_jdt(b1, b2);
                if j.as_ref() != Ok(&t) || comb_r_tropical(&t.0, &t.1) != (b1.clone(), b2.clone()) {
                    bad.push(format!("{b1}⊗{b2}"));
                }
            }
        }
        let detail = if bad.is_empty() { format!("{} pairs", rows.len() * rows.len()) } else { bad.join(", ") };
        out.push(CaseResult::new(format!("n={n} lengths≤4"), bad.is_empty(), detail));
    }
    out
}

/// Tallies `energy = cocharge` over straight tableaux with at most 12 cells,
/// at most `n` rows, letters `≤ 3` and partition weight.
pub fn energy_tally(order: SubstitutionOrder, rule: CochargeRule) -> Vec<(u32, u32, usize, usize)> {
    let mut tally = std::collections::BTreeMap::new();
    for n in 1..=3u32 {
        for size in 0..=12u32 {
            for lam in Partition::of_size(size) {
                if lam.len() > n as usize {
                    continue;
                }
                for t in ssyt_enumerate(&SkewShape::straight(lam.clone()), 3) {
                    if !has_partition_weight(&t.weight(t.max_entry())) {
                        continue;
                    }
                    let e = energy_with(&t, n, EnergyConvention { order }).map(|r| r.value);
                    let c = cocharge(&reading_word(&t), rule).map(|c| c as i64);
                    let entry = tally.entry((n, t.max_entry())).or_insert((0usize, 0usize));
                    entry.0 += 1;
                    if e.is_err() || e != c {
                        entry.1 += 1;
                    }
                }
            }
        }
    }
    tally.into_iter().map(|((n, m), (cases, bad))| (n, m, cases, bad)).collect()
}

/// `energy(T) = cc(T)` with the default conventions, by `(n, largest letter)`.
pub fn energy_vs_cocharge() -> Vec<CaseResult> {
    energy_tally(SubstitutionOrder::Direct, CochargeRule::Index)
        .into_iter()
        .map(|(n, m, cases, bad)| CaseResult::new(format!("n={n} letters≤{m}"), bad == 0, format!("{bad} of {cases} differ")))
        .collect()
}

/// Exhaustive and random agreement of the two evolutions, and conservation
/// of the calibrated tropical quantities along random trajectories.
pub fn boxball(cfg: SuiteConfig) -> Vec<CaseResult> {
    let mut out = Vec::new();
    let exhaustive: Vec<_> = (0..=8).flat_map(all_states).collect();
    let bad = exhaustive.iter().filter(|s| evolve_carrier(s, Capacity::Infinite).ok().as_ref() != Some(&evolve_leftmost(s))).count();
    out.push(CaseResult::new("leftmost = carrier, ≤ 8 boxes", bad == 0, format!("{bad} of {} differ", exhaustive.len())));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let randoms: Vec<_> = (0..500).map(|_| random_state(&mut rng, 40, 12)).collect();
    let bad = randoms.iter().filter(|s| evolve_carrier(s, Capacity::Infinite).ok().as_ref() != Some(&evolve_leftmost(s))).count();
    out.push(CaseResult::new("leftmost = carrier, 500 random states", bad == 0, format!("{bad} differ")));

    let laws = calibrate_conservation(6);
    let Some(&law) = laws.first() else {
        out.push(CaseResult::new("calibration", false, "no candidate law holds on all small states"));
        return out;
    };
    out.push(CaseResult::new("calibration", true, format!("{law:?}")));
    let mut bad = 0;
    for _ in 0..500 {
        let mut s = random_state(&mut rng, 24, 8);
        for _ in 0..6 {
            if !law.holds_on(&s) {
                bad += 1;
                break;
            }
            s = evolve_leftmost(&s);
        }
    }
    out.push(CaseResult::new("conserved along 500 random trajectories", bad == 0, format!("{bad} trajectories broke")));
    out
}

/// Random nonnegative parameters `k/100`, `1 ≤ k ≤ 100`, with `n, m ≤ 3`;
/// the shared input of the factorization and TNN suites.
pub fn random_products(seed: u64, count: usize) -> Vec<LoopVarArray<BigRational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (n, m) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            LoopVarArray::from_fn(n, m, |_, _| BigRational::new(rng.gen_range(1..=100).into(), 100.into()))
        })
        .collect()
}

fn to_f64(a: &LoopVarArray<BigRational>) -> LoopVarArray<f64> {
    a.map(f64::from_rational)
}

pub fn factor(cfg: SuiteConfig) -> Vec<CaseResult> {
    let products = random_products(cfg.seed, 100);
    let (mut converged, mut matched) = (0, 0);
    let mut notes = Vec::new();
    for (i, x) in products.iter().enumerate() {
        let xf = to_f64(x);
        match whirl_factorize(&whirl_product(&xf), xf.m(), 1e-8, 200) {
            Ok(r) if r.residual <= 1e-8 => {
                converged += 1;
                if orbit_match(&xf, &r.params, 1e-6) {
                    matched += 1;
                } else {
                    notes.push(format!("#{i} outside orbit"));
                }
            }
            Ok(r) => notes.push(format!("#{i} residual {:.1e}", r.residual)),
            Err(e) => notes.push(format!("#{i} {e}")),
        }
    }
    vec![
        CaseResult::new("residual ≤ 1e-8", converged == products.len(), format!("{converged} of {}; {}", products.len(), notes.join(", "))),
        CaseResult::new("orbit match ≥ 95", matched >= 95, format!("{matched} of {}", products.len())),
    ]
}

pub fn tnn(cfg: SuiteConfig) -> Vec<CaseResult> {
    let products = random_products(cfg.seed, 100);
    let shapes = SkewShape::all_in_box(3, 3);
    let (mut tnn_bad, mut cert_bad) = (0, 0);
    for x in &products {
        let p = whirl_product(x);
        if !tnn_check(&p, 5, 3).passed() {
            tnn_bad += 1;
        }
        let e = extract_e(&p).expect("whirl products are unit upper triangular at t = 0");
        if !skew_schur_certificate(&e, &shapes, 1..=x.n() as i64).passed() {
            cert_bad += 1;
        }
    }
    let scalar = |c: &[i64]| {
        crate::lsym::MatrixPoly::new(1, c.iter().map(|&v| vec![vec![BigRational::from_integer(v.into())]]).collect())
            .expect("1×1 blocks")
    };
    let minus = tnn_check(&scalar(&[1, -1]), 5, 3);
    let cyclo = tnn_check(&scalar(&[1, 1, 1]), 5, 3);
    vec![
        CaseResult::new("window 5, order 3 on 100 products", tnn_bad == 0, format!("{tnn_bad} with violations")),
        CaseResult::new("skew Schur certificate, shapes in 3×3", cert_bad == 0, format!("{cert_bad} with negatives")),
        CaseResult::new("1 − t violates", !minus.passed(), format!("{} negative minors", minus.violations.len())),
        CaseResult::new("1 + t + t² violates", !cyclo.passed(), format!("{} negative minors", cyclo.violations.len())),
    ]
}
