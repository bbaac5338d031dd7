use super::{CrystalError, OneRowTableau};
use crate::lsym::{ssyt_enumerate, LoopVarArray, Partition, SkewShape, Tableau};

/// Letter counts `(α_1, …, α_n)` of a word.
pub fn tableau_word_weight(u: &[u32], n: u32) -> Vec<u32> {
    let mut w = vec![0; n as usize];
    for &l in u {
        w[l as usize - 1] += 1;
    }
    w
}

pub fn has_partition_weight(w: &[u32]) -> bool {
    w.windows(2).all(|p| p[0] >= p[1])
}

/// How the index of an underlined `i` relates to that of the underlined
/// `i − 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CochargeRule {
    /// Same index when the `i` lies to the left of the `i − 1`, else one more.
    #[default]
    Index,
    /// One more when the `i` lies to the left, else the same (the classical
    /// Lascoux–Schützenberger cocharge, `n(μ)` minus the index rule).
    Classical,
}

/// One extraction round: `(position, letter, index)` of each underlined letter
/// in the current word, followed by the remaining word.
pub type CochargeStep = (Vec<(usize, u32, u32)>, Vec<u32>);

/// The rounds of the recursive cocharge computation.
pub fn cocharge_trace(u: &[u32], rule: CochargeRule) -> Result<Vec<CochargeStep>, CrystalError> {
    let n = u.iter().copied().max().unwrap_or(0);
    if u.contains(&0) {
        return Err(CrystalError::LetterOutOfRange { letter: 0, n });
    }
    let wt = tableau_word_weight(u, n);
    if !has_partition_weight(&wt) {
        return Err(CrystalError::NonPartitionWeight(wt));
    }
    let mut word = u.to_vec();
    let mut steps = Vec::new();
    while !word.is_empty() {
        let mut marks: Vec<(usize, u32, u32)> = Vec::new();
        let mut pos = word.iter().rposition(|&l| l == 1).expect("partition weight has a 1");
        let mut index = 0;
        marks.push((pos, 1, 0));
        for i in 2.. {
            let left = word[..pos].iter().rposition(|&l| l == i);
            let (p, is_left) = match left {
                Some(p) => (p, true),
                None => match word.iter().rposition(|&l| l == i) {
                    Some(p) => (p, false),
                    None => break,
                },
            };
            let bump = match rule {
                CochargeRule::Index => !is_left,
                CochargeRule::Classical => is_left,
            };
            index += bump as u32;
            marks.push((p, i, index));
            pos = p;
        }
        let mut rest = word.clone();
        let mut gone: Vec<usize> = marks.iter().map(|m| m.0).collect();
        gone.sort_unstable_by(|a, b| b.cmp(a));
        for p in gone {
            rest.remove(p);
        }
        steps.push((marks, rest.clone()));
        word = rest;
    }
    Ok(steps)
}

/// Cocharge under the chosen index rule; `cc(∅) = 0`.
pub fn cocharge(u: &[u32], rule: CochargeRule) -> Result<u32, CrystalError> {
    Ok(cocharge_trace(u, rule)?.iter().flat_map(|(m, _)| m.iter().map(|x| x.2)).sum())
}

/// Rows read left to right, bottom row first.
pub fn reading_word(t: &Tableau) -> Vec<u32> {
    t.rows().iter().rev().flatten().copied().collect()
}

/// `a_i^{(j)}`: the number of `i`s in row `j`, as `a[i−1][j−1]` for rows
/// `1..=n`.
fn row_counts(t: &Tableau, n: u32) -> Vec<Vec<u32>> {
    let m = t.max_entry().max(1);
    let mut a = vec![vec![0; n as usize]; m as usize];
    for (j, row) in t.rows().iter().enumerate() {
        for &v in row {
            a[v as usize - 1][j] += 1;
        }
    }
    a
}

fn check_highest(t: &Tableau, n: u32) -> Result<Vec<u32>, CrystalError> {
    if !t.inner().is_empty() {
        return Err(CrystalError::Lsym(crate::lsym::LsymError::InvalidTableau("straight shape required".into())));
    }
    if t.rows().len() > n as usize {
        return Err(CrystalError::LetterOutOfRange { letter: t.rows().len() as u32, n });
    }
    let wt = t.weight(t.max_entry());
    if !has_partition_weight(&wt) {
        return Err(CrystalError::NonPartitionWeight(wt));
    }
    Ok(wt)
}

/// `b(T) = b_1 ⊗ ⋯ ⊗ b_m`, `b_i` holding `a_i^{(j)}` copies of `j`.
pub fn b_of_t(t: &Tableau, n: u32) -> Result<Vec<OneRowTableau>, CrystalError> {
    check_highest(t, n)?;
    Ok(row_counts(t, n).into_iter().map(OneRowTableau::from_counts).collect())
}

/// How the row counts are placed into loop variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SubstitutionOrder {
    /// `x_i^{(j)} = a_i^{(j+1−i)}`.
    #[default]
    Direct,
    /// `x_i^{(j)} = a_{m+1−i}^{(j+1−i)}`: the same color shift with the
    /// factors fed in reverse order.
    SiteReversed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct EnergyConvention {
    pub order: SubstitutionOrder,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnergyResult {
    pub value: i64,
    /// The staircase tableaux attaining the minimum.
    pub minimizers: Vec<Tableau>,
    /// The substituted point `x_i^{(j)}`.
    pub point: LoopVarArray<i64>,
}

/// `trop(s^{(0)}_{(m−1)δ_{n−1}})` at the substituted row counts of `T`,
/// by enumeration of the staircase tableaux with entries `≤ m`.
pub fn energy_with(t: &Tableau, n: u32, conv: EnergyConvention) -> Result<EnergyResult, CrystalError> {
    let wt = check_highest(t, n)?;
    let m = wt.len() as u32;
    let a = row_counts(t, n);
    let ai = |i: u32, j: i64| a[i as usize - 1][crate::exactring::canonical_color(j, n) as usize - 1] as i64;
    let point = LoopVarArray::from_fn(n, m, |i, j| match conv.order {
        SubstitutionOrder::Direct => ai(i, j as i64 + 1 - i as i64),
        SubstitutionOrder::SiteReversed => ai(m + 1 - i, j as i64 + 1 - i as i64),
    });
    let shape = SkewShape::straight(Partition::staircase(n.saturating_sub(1)).scaled(m.saturating_sub(1)));
    let mut best: Option<i64> = None;
    let mut minimizers = Vec::new();
    for s in ssyt_enumerate(&shape, m) {
        let w: i64 = s.cells().iter().map(|&((i, j), v)| point.get(v, i as i64 - j as i64)).sum();
        match best {
            Some(b) if w > b => {}
            Some(b) if w == b => minimizers.push(s),
            _ => {
                best = Some(w);
                minimizers = vec![s];
            }
        }
    }
    Ok(EnergyResult { value: best.unwrap_or(0), minimizers, point })
}

/// The energy with the default conventions.
pub fn energy(t: &Tableau, n: u32) -> Result<EnergyResult, CrystalError> {
    energy_with(t, n, EnergyConvention::default())
}
