use std::error::Error;
use std::fmt::Write as _;
use std::io::Read;

use loopsym::boxball::{evolve_carrier, evolve_leftmost, BoxBallState, Capacity};
use loopsym::crystal::{
    cocharge, cocharge_trace, comb_r_jdt, comb_r_tropical, energy_with, tropicalize, CochargeRule, EnergyConvention,
    OneRowTableau, SubstitutionOrder,
};
use loopsym::exactring::Trop;
use loopsym::factorize::{exact_n1_factorization, skew_schur_certificate, tnn_check, whirl_factorize};
use loopsym::hopf::axiom_suite;
use loopsym::lsym::{
    extract_e, loop_e, loop_powersum, loop_schur_jt, loop_schur_tableaux, mn_expand, LoopVarArray, LoopVarJson,
    MatrixPolyJson, Partition, SkewShape, Tableau,
};
use loopsym::rmatrix::{apply_word, apply_word_values, loop_alternant_at, schur_via_alternants, swap, swap_bindings, PermWord};
use loopsym::verify::{run_suites, SuiteConfig};
use loopsym::{Ring, VarId};
use num_rational::BigRational;

use crate::{Cli, Command, Order, RMethod, Render, Rule, SchurMethod, Vars};

type Res<T> = Result<T, Box<dyn Error>>;

pub struct Output {
    pub text: String,
    /// False when a check ran and failed.
    pub ok: bool,
}

fn done(text: String) -> Res<Output> {
    Ok(Output { text, ok: true })
}

/// Inline text, `@path`, or `-` for stdin.
fn read_arg(s: &str) -> Res<String> {
    if s == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else if let Some(path) = s.strip_prefix('@') {
        Ok(std::fs::read_to_string(path)?)
    } else {
        Ok(s.to_string())
    }
}

fn ints<T: std::str::FromStr>(s: &str) -> Res<Vec<T>>
where
    T::Err: Error + 'static,
{
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(|t| Ok(t.parse::<T>()?)).collect()
}

fn partition(s: &str) -> Res<Partition> {
    Ok(Partition::new(ints(s)?)?)
}

fn digits(s: &str) -> Res<Vec<u32>> {
    s.chars().map(|c| c.to_digit(10).filter(|&d| d > 0).ok_or_else(|| format!("bad letter {c:?}").into())).collect()
}

fn point(vars: &Vars) -> Res<Option<LoopVarArray<BigRational>>> {
    let Some(src) = &vars.point else { return Ok(None) };
    let j: LoopVarJson = serde_json::from_str(&read_arg(src)?)?;
    if (j.n, j.m) != (vars.n, vars.m) {
        return Err(format!("point has n={}, m={}; expected n={}, m={}", j.n, j.m, vars.n, vars.m).into());
    }
    Ok(Some(j.to_values()?))
}

fn line(v: impl std::fmt::Display) -> Res<Output> {
    done(format!("{v}\n"))
}

pub fn run(cli: &Cli) -> Res<Output> {
    match &cli.command {
        Command::E { vars, k, r } => match point(vars)? {
            Some(p) => line(loop_e(&p, *k, *r)),
            None => line(loop_e(&LoopVarArray::symbolic(vars.n, vars.m), *k, *r)),
        },
        Command::Schur { vars, shape, inner, r, method } => schur(vars, shape, inner, *r, *method),
        Command::Powersum { vars, k } => match point(vars)? {
            Some(p) => line(loop_powersum(&p, *k)),
            None => line(loop_powersum(&LoopVarArray::symbolic(vars.n, vars.m), *k)),
        },
        Command::Mn { n, k, shape } => {
            let mut terms = mn_expand(*n, *k, &partition(shape)?);
            terms.sort();
            let mut out = String::new();
            for (mu, sign) in terms {
                writeln!(out, "{} {mu}", if sign > 0 { "+" } else { "-" })?;
            }
            done(out)
        }
        Command::Rmatrix { vars, word } => rmatrix(vars, word),
        Command::HopfCheck { n, max_i, unsigned } => {
            let fails = axiom_suite(*n, *max_i, !unsigned);
            let mut out = String::new();
            for (g, axiom) in &fails {
                writeln!(out, "FAIL {axiom} on {g}")?;
            }
            let label = if *unsigned { "unsigned" } else { "signed" };
            writeln!(out, "n={n}, i≤{max_i}, {label} antipode: {} failure(s)", fails.len())?;
            Ok(Output { text: out, ok: fails.is_empty() })
        }
        Command::Trop { x, y, formulas } => trop(x, y, *formulas),
        Command::CombR { n, b1, b2, method } => {
            let (b1, b2) = (OneRowTableau::from_row(&digits(b1)?, *n)?, OneRowTableau::from_row(&digits(b2)?, *n)?);
            let (c1, c2) = match method {
                RMethod::Trop => comb_r_tropical(&b1, &b2),
                RMethod::Jdt => comb_r_jdt(&b1, &b2)?,
            };
            line(format!("{c1} ⊗ {c2}"))
        }
        Command::Cocharge { word, rule, trace } => {
            let rule = match rule {
                Rule::Index => CochargeRule::Index,
                Rule::Classical => CochargeRule::Classical,
            };
            let w = digits(word)?;
            let mut out = String::new();
            if *trace {
                for (marks, rest) in cocharge_trace(&w, rule)? {
                    let idx: Vec<String> = marks.iter().map(|(_, l, i)| format!("{l}:{i}")).collect();
                    let rest: String = rest.iter().map(|d| d.to_string()).collect();
                    writeln!(out, "{}  → {}", idx.join(" "), if rest.is_empty() { "∅" } else { &rest })?;
                }
            }
            writeln!(out, "{}", cocharge(&w, rule)?)?;
            done(out)
        }
        Command::Energy { tableau, n, order } => {
            let t: Tableau = serde_json::from_str(&read_arg(tableau)?)?;
            let order = match order {
                Order::Direct => SubstitutionOrder::Direct,
                Order::Reversed => SubstitutionOrder::SiteReversed,
            };
            let r = energy_with(&t, *n, EnergyConvention { order })?;
            let minimizers: Vec<_> = r.minimizers.iter().map(|m| m.rows().to_vec()).collect();
            line(serde_json::json!({ "energy": r.value, "minimizers": minimizers, "point": r.point.sites() }))
        }
        Command::Boxball { state, positions, steps, render, capacity } => {
            let s = match (state, positions) {
                (Some(j), _) => serde_json::from_str::<BoxBallState>(&read_arg(j)?)?,
                (None, Some(p)) => BoxBallState::from_positions(&ints(p)?),
                (None, None) => return Err("give --state or --positions".into()),
            };
            boxball(s, *steps, *render, *capacity)
        }
        Command::Factor { input, m, tol, max_iter } => factor(input, *m, *tol, *max_iter),
        Command::Tnn { input, window, order } => {
            let p = serde_json::from_str::<MatrixPolyJson>(&read_arg(input)?)?.to_rational()?;
            let r = tnn_check(&p, *window, *order);
            let mut v = serde_json::to_value(&r)?;
            v["scope"] = r.scope().into();
            v["passed"] = r.passed().into();
            line(v)
        }
        Command::CertifySchur { input, in_box } => {
            let p = serde_json::from_str::<MatrixPolyJson>(&read_arg(input)?)?.to_rational()?;
            let (rows, cols) = in_box.split_once('x').ok_or("box must look like 3x3")?;
            let shapes = SkewShape::all_in_box(rows.parse()?, cols.parse()?);
            let e = extract_e(&p)?;
            let cert = skew_schur_certificate(&e, &shapes, 1..=p.size() as i64);
            let mut v = serde_json::to_value(&cert)?;
            v["passed"] = cert.passed().into();
            line(v)
        }
        Command::Verify { suite } => {
            let reports = run_suites(suite, SuiteConfig { seed: cli.seed, points: cli.points })?;
            let mut out = String::new();
            for r in &reports {
                writeln!(out, "{r}")?;
            }
            Ok(Output { text: out, ok: reports.iter().all(|r| r.passed()) })
        }
    }
}

fn schur(vars: &Vars, shape: &str, inner: &str, r: i64, method: SchurMethod) -> Res<Output> {
    let outer = partition(shape)?;
    let sk = SkewShape::new(outer.clone(), partition(inner)?)?;
    if method == SchurMethod::Alternant {
        if !sk.is_straight() {
            return Err("alternants give straight shapes only".into());
        }
        // the alternant ratio at color c is the Schur function at c + 1 − m
        let c = r + vars.m as i64 - 1;
        return match point(vars)? {
            Some(p) => {
                let m = vars.m as usize;
                let alpha = |l: &Partition| (1..=m).map(|i| l.part(i) + (m - i) as u32).collect::<Vec<_>>();
                let num = loop_alternant_at(&p, &alpha(&outer), c)?;
                let den = loop_alternant_at(&p, &alpha(&Partition::empty()), c)?;
                line(num / den)
            }
            None => {
                let f = schur_via_alternants(vars.n, vars.m, &outer, c)?;
                match f.num().div_exact(f.den()) {
                    Some(q) => line(q),
                    None => line(f),
                }
            }
        };
    }
    let eval = |v: &LoopVarArray<_>| match method {
        SchurMethod::Jt => loop_schur_jt(v, &sk, r),
        _ => loop_schur_tableaux(v, &sk, r),
    };
    match point(vars)? {
        Some(p) => match method {
            SchurMethod::Jt => line(loop_schur_jt(&p, &sk, r)),
            _ => line(loop_schur_tableaux(&p, &sk, r)),
        },
        None => line(eval(&LoopVarArray::symbolic(vars.n, vars.m))),
    }
}

fn rmatrix(vars: &Vars, word: &str) -> Res<Output> {
    let w = PermWord::parse(word)?;
    if let Some(p) = point(vars)? {
        let img = apply_word_values(&p, &w)?;
        return line(serde_json::to_string(&LoopVarJson::from_values(&img))?);
    }
    let img = apply_word(vars.n, vars.m, &w)?;
    let mut out = String::new();
    for i in 1..=vars.m {
        for j in 1..=vars.n as i64 {
            writeln!(out, "{} ↦ {}", VarId::new(i, j, vars.n), img.get(i, j))?;
        }
    }
    done(out)
}

fn trop(x: &str, y: &str, formulas: bool) -> Res<Output> {
    let (x, y): (Vec<i64>, Vec<i64>) = (ints(x)?, ints(y)?);
    if x.len() != y.len() || x.is_empty() {
        return Err("x and y must be nonempty and of equal length".into());
    }
    let n = x.len() as u32;
    let s = swap(&x.iter().map(|&v| Trop(v)).collect::<Vec<_>>(), &y.iter().map(|&v| Trop(v)).collect::<Vec<_>>())?;
    let show = |v: &[Trop]| v.iter().map(|t| t.0.to_string()).collect::<Vec<_>>().join(",");
    let mut out = format!("x' = ({})\ny' = ({})\n", show(&s.x_out), show(&s.y_out));
    if formulas {
        for (v, f) in swap_bindings(n, 1) {
            writeln!(out, "{v} ↦ {}", tropicalize(&f)?)?;
        }
    }
    done(out)
}

fn boxball(s: BoxBallState, steps: usize, render: Render, capacity: Option<u32>) -> Res<Output> {
    let mut frames = vec![s];
    for _ in 0..steps {
        let cur = frames.last().expect("nonempty");
        let next = match capacity {
            Some(c) => evolve_carrier(cur, Capacity::Finite(c))?,
            None => evolve_leftmost(cur),
        };
        frames.push(next);
    }
    let width = frames.iter().map(|f| f.len()).max().unwrap_or(0);
    let mut out = String::new();
    for f in &frames {
        match render {
            Render::Ascii => writeln!(out, "{}", f.render(width))?,
            Render::Json => writeln!(out, "{}", serde_json::to_string(f)?)?,
        }
    }
    done(out)
}

fn factor(input: &str, m: u32, tol: f64, max_iter: usize) -> Res<Output> {
    let p = serde_json::from_str::<MatrixPolyJson>(&read_arg(input)?)?.to_rational()?;
    if p.size() == 1 {
        let coeffs = p.entry(1, 1);
        if let Some(xs) = exact_n1_factorization(&coeffs).filter(|xs| xs.len() == m as usize) {
            let a = LoopVarArray::from_fn(1, m, |i, _| xs[i as usize - 1].clone());
            let mut v = serde_json::to_value(LoopVarJson::from_values(&a))?;
            v["residual"] = 0.into();
            v["exact"] = true.into();
            return line(v);
        }
    }
    let r = whirl_factorize(&p.map(f64::from_rational), m, tol, max_iter)?;
    line(serde_json::json!({
        "n": r.params.n(),
        "m": r.params.m(),
        "values": r.params.sites(),
        "residual": r.residual,
        "converged": r.converged,
        "iterations": r.iterations,
    }))
}
