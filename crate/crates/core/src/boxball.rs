//! The Takahashi–Satsuma box-ball system: the leftmost-ball and carrier
//! evolutions, solitons, and tropical loop-elementary integrals of motion.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactring::Trop;
use crate::lsym::{loop_e_semiring, LoopVarArray};
use crate::rmatrix::swap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoxBallError {
    #[error("carrier still holds {0} ball(s) at the end of the window")]
    CarrierNotEmptied(u32),
    #[error("box values must be 0 or 1, found {0}")]
    BadBox(u8),
}

/// A finite window of unit boxes, indexed from 0; boxes beyond the window
/// are empty. The window always ends with at least as many empty boxes as
/// there are balls.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BoxesJson", into = "BoxesJson")]
pub struct BoxBallState {
    boxes: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct BoxesJson {
    boxes: Vec<u8>,
}

impl TryFrom<BoxesJson> for BoxBallState {
    type Error = BoxBallError;
    fn try_from(j: BoxesJson) -> Result<Self, Self::Error> {
        if let Some(&b) = j.boxes.iter().find(|&&b| b > 1) {
            return Err(BoxBallError::BadBox(b));
        }
        Ok(BoxBallState::from_boxes(j.boxes.iter().map(|&b| b == 1).collect()))
    }
}

impl From<BoxBallState> for BoxesJson {
    fn from(s: BoxBallState) -> Self {
        BoxesJson { boxes: s.boxes.iter().map(|&b| b as u8).collect() }
    }
}

impl BoxBallState {
    pub fn from_boxes(boxes: Vec<bool>) -> Self {
        let mut s = BoxBallState { boxes };
        s.ensure_margin();
        s
    }

    pub fn from_positions(positions: &[usize]) -> Self {
        let len = positions.iter().max().map_or(0, |p| p + 1);
        let mut boxes = vec![false; len];
        for &p in positions {
            boxes[p] = true;
        }
        Self::from_boxes(boxes)
    }

    /// Keeps a trailing run of empty boxes at least as long as the number of
    /// balls, so one evolution step never leaves the window.
    fn ensure_margin(&mut self) {
        let balls = self.balls();
        let last = self.boxes.iter().rposition(|&b| b).map_or(0, |p| p + 1);
        if self.boxes.len() < last + balls {
            self.boxes.resize(last + balls, false);
        }
    }

    /// Pads the window to at least `len` boxes.
    pub fn padded(&self, len: usize) -> Self {
        let mut b = self.boxes.clone();
        if b.len() < len {
            b.resize(len, false);
        }
        BoxBallState { boxes: b }
    }

    pub fn boxes(&self) -> &[bool] {
        &self.boxes
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn balls(&self) -> usize {
        self.boxes.iter().filter(|&&b| b).count()
    }

    /// Ball positions, 0-based.
    pub fn positions(&self) -> Vec<usize> {
        self.boxes.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
    }

    /// One frame as `.`/`o`.
    pub fn render(&self, width: usize) -> String {
        (0..width.max(self.len())).map(|i| if self.boxes.get(i) == Some(&true) { 'o' } else { '.' }).collect()
    }

    /// A copy with the window cut (or padded) to exactly `len` boxes.
    fn with_len(&self, len: usize) -> Self {
        let mut b = self.boxes.clone();
        b.resize(len, false);
        BoxBallState { boxes: b }
    }
}

impl fmt::Display for BoxBallState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(0))
    }
}

/// Moves each ball, leftmost first, to the leftmost empty box to its right.
/// The result keeps the window length (then restores the margin).
pub fn evolve_leftmost(s: &BoxBallState) -> BoxBallState {
    let mut occ = s.boxes.clone();
    occ.resize(s.len() + s.balls() + 1, false);
    for p in s.positions() {
        let q = (p + 1..).find(|&q| !occ[q]).expect("window has an empty margin");
        occ[p] = false;
        occ[q] = true;
    }
    let mut out = BoxBallState { boxes: occ }.with_len(s.len());
    out.ensure_margin();
    out
}

/// Carrier capacity: a number or effectively unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Capacity {
    Finite(u32),
    Infinite,
}

/// One carrier–box interaction `{(a,b), (c,d)} ↦ {(a′,b′), (c′,d′)}`
/// computed as the tropical `n = 2` swap of the carrier `(c, d)` (first
/// site) with the box `(a, b)`: returns `(a′, b′, d′)`.
pub fn carrier_step(a: u32, b: u32, d: u32, capacity: u32) -> (u32, u32, u32) {
    // parity-shifted encoding: the carrier is read as (free, balls), the box
    // that follows it as (balls, free)
    let carrier = [Trop(capacity as i64 - d as i64), Trop(d as i64)];
    let boxed = [Trop(b as i64), Trop(a as i64)];
    let s = swap(&carrier, &boxed).expect("tropical division is total");
    // the box now sits first, read as (free, balls); the carrier as (balls, free)
    let (a2, b2) = (s.x_out[0].0, s.x_out[1].0);
    let d2 = s.y_out[0].0;
    (a2 as u32, b2 as u32, d2 as u32)
}

/// Sweeps a carrier of the given capacity from the left through the window.
pub fn evolve_carrier(s: &BoxBallState, capacity: Capacity) -> Result<BoxBallState, BoxBallError> {
    let cap = match capacity {
        Capacity::Finite(c) => c,
        Capacity::Infinite => s.balls() as u32 + 1,
    };
    let mut d = 0;
    let mut out = Vec::with_capacity(s.len());
    for &ball in &s.boxes {
        let (a, b) = if ball { (0, 1) } else { (1, 0) };
        let (_, b2, d2) = carrier_step(a, b, d, cap);
        out.push(b2 == 1);
        d = d2;
    }
    if d != 0 {
        return Err(BoxBallError::CarrierNotEmptied(d));
    }
    let mut st = BoxBallState { boxes: out };
    st.ensure_margin();
    Ok(st)
}

/// `steps + 1` frames starting at `s`.
pub fn trajectory(s: &BoxBallState, steps: usize) -> Vec<BoxBallState> {
    let mut frames = vec![s.clone()];
    for _ in 0..steps {
        let next = evolve_leftmost(frames.last().expect("nonempty"));
        frames.push(next);
    }
    frames
}

/// Lengths of maximal runs of balls, left to right.
pub fn solitons(s: &BoxBallState) -> Vec<usize> {
    s.boxes.split(|&b| !b).map(|r| r.len()).filter(|&l| l > 0).collect()
}

/// Whether the runs are separated by gaps longer than the larger neighbour,
/// after which they no longer interact.
pub fn solitons_separated(s: &BoxBallState) -> bool {
    let pos = s.positions();
    let runs = solitons(s);
    let mut gaps = Vec::new();
    let mut prev_end: Option<usize> = None;
    let mut i = 0;
    for &len in &runs {
        let start = pos[i];
        if let Some(e) = prev_end {
            gaps.push(start - e - 1);
        }
        prev_end = Some(start + len - 1);
        i += len;
    }
    runs.windows(2).zip(&gaps).all(|(w, &g)| g > w[0].max(w[1]))
}

/// `x_p^{(j)}` = balls when `j ≡ p (mod 2)`, free space otherwise, for a
/// site `(free, balls)` at chain position `p`.
fn encode(sites: &[(i64, i64)], first_position: usize) -> LoopVarArray<Trop> {
    LoopVarArray::from_fn(2, sites.len() as u32, |i, j| {
        let p = first_position + i as usize - 1;
        let (a, b) = sites[i as usize - 1];
        if (j as usize) % 2 == p % 2 {
            Trop(b)
        } else {
            Trop(a)
        }
    })
}

fn box_sites(s: &BoxBallState) -> Vec<(i64, i64)> {
    s.boxes.iter().map(|&b| if b { (0, 1) } else { (1, 0) }).collect()
}

/// `trop(e_k^{(r)})` over the window's boxes at positions `1..=m`
/// (`None` when `k > m`).
pub fn tropical_invariant(s: &BoxBallState, k: i64, r: i64) -> Option<i64> {
    loop_e_semiring(&encode(&box_sites(s), 1), k, r).map(|t| t.0)
}

/// The same with the window's boxes placed at positions `0..m` (after one
/// step the box that was at position `p` sits at `p − 1` in the chain).
pub fn tropical_invariant_shifted(s: &BoxBallState, k: i64, r: i64) -> Option<i64> {
    loop_e_semiring(&encode(&box_sites(s), 0), k, r).map(|t| t.0)
}

/// `trop(e_k^{(r)})` of the chain `carrier, box_1, …, box_m` with an empty
/// carrier of capacity `balls + 1` at position 0.
pub fn leading_invariant(s: &BoxBallState, k: i64, r: i64) -> Option<i64> {
    let mut sites = vec![(s.balls() as i64 + 1, 0)];
    sites.extend(box_sites(s));
    loop_e_semiring(&encode(&sites, 0), k, r).map(|t| t.0)
}

/// `trop(e_k^{(r)})` of the chain `box_1, …, box_m, carrier` (positions
/// `0..=m`), the carrier having passed through.
pub fn trailing_invariant(s: &BoxBallState, k: i64, r: i64) -> Option<i64> {
    let mut sites = box_sites(s);
    sites.push((s.balls() as i64 + 1, 0));
    loop_e_semiring(&encode(&sites, 0), k, r).map(|t| t.0)
}

/// A candidate conservation law `I(s) = J(evolve(s))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConservationLaw {
    /// Box-only `e_k^{(r)}` at the same color.
    BoxesSameColor,
    /// Box-only `e_k^{(r)}` before, `e_k^{(r+1)}` after (odd and even swap).
    BoxesColorSwap,
    /// Box-only, with the evolved boxes moved one position left in the chain.
    BoxesPositionShift,
    /// Carrier included: leading chain before, trailing chain after.
    CarrierChain,
}

impl ConservationLaw {
    pub const ALL: [ConservationLaw; 4] = [
        ConservationLaw::BoxesSameColor,
        ConservationLaw::BoxesColorSwap,
        ConservationLaw::BoxesPositionShift,
        ConservationLaw::CarrierChain,
    ];

    /// Number of sites in the encoded chain.
    pub fn sites(&self, s: &BoxBallState) -> usize {
        match self {
            ConservationLaw::CarrierChain => s.len() + 1,
            _ => s.len(),
        }
    }

    /// Whether `s ↦ evolve(s)` (same window) conserves `e_k^{(r)}` for every
    /// `k` and both colors.
    pub fn holds_on(&self, s: &BoxBallState) -> bool {
        let t = evolve_leftmost(s).with_len(s.len());
        let m = self.sites(s) as i64;
        (1..=m).all(|k| {
            (1..=2).all(|r| match self {
                ConservationLaw::BoxesSameColor => tropical_invariant(s, k, r) == tropical_invariant(&t, k, r),
                ConservationLaw::BoxesColorSwap => tropical_invariant(s, k, r) == tropical_invariant(&t, k, r + 1),
                ConservationLaw::BoxesPositionShift => {
                    tropical_invariant(s, k, r) == tropical_invariant_shifted(&t, k, r)
                }
                ConservationLaw::CarrierChain => leading_invariant(s, k, r) == trailing_invariant(&t, k, r),
            })
        })
    }
}

/// All states on `len` boxes (window padded with the margin).
pub fn all_states(len: usize) -> impl Iterator<Item = BoxBallState> {
    (0u32..1 << len).map(move |mask| BoxBallState::from_boxes((0..len).map(|i| mask >> i & 1 == 1).collect()))
}

/// The candidate laws that hold on every state with at most `max_len`
/// boxes, in the order of [`ConservationLaw::ALL`].
pub fn calibrate_conservation(max_len: usize) -> Vec<ConservationLaw> {
    ConservationLaw::ALL
        .into_iter()
        .filter(|law| (0..=max_len).flat_map(all_states).all(|s| law.holds_on(&s)))
        .collect()
}

/// The color `r` for which `trop(e_1^{(r)})` is the indicator
/// "every odd site (1-based) empty and every even site occupied", checked on
/// all windows of `max_len` boxes or fewer.
pub fn calibrate_indicator_color(max_len: usize) -> Option<i64> {
    (1..=2).find(|&r| {
        (1..=max_len).flat_map(|len| {
            (0u32..1 << len).map(move |mask| (0..len).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
        })
        .all(|boxes| {
            let expect = boxes.iter().enumerate().all(|(i, &b)| if (i + 1) % 2 == 1 { !b } else { b });
            let s = BoxBallState { boxes };
            tropical_invariant(&s, 1, r) == Some(expect as i64)
        })
    })
}

/// A random state with up to `max_balls` balls in up to `max_len` boxes.
pub fn random_state<G: rand::Rng>(rng: &mut G, max_len: usize, max_balls: usize) -> BoxBallState {
    let len = rng.gen_range(1..=max_len);
    let balls = rng.gen_range(0..=max_balls.min(len));
    let pos = rand::seq::index::sample(rng, len, balls).into_vec();
    let mut s = BoxBallState::from_positions(&pos);
    s = s.padded(len);
    s.ensure_margin();
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(p: &[usize]) -> BoxBallState {
        BoxBallState::from_positions(p)
    }

    #[test]
    fn worked_frames() {
        let frames = trajectory(&st(&[1, 2, 3, 8]), 4);
        let pos: Vec<Vec<usize>> = frames.iter().map(|f| f.positions()).collect();
        assert_eq!(
            pos,
            vec![vec![1, 2, 3, 8], vec![4, 5, 6, 9], vec![7, 8, 10, 11], vec![9, 12, 13, 14], vec![10, 15, 16, 17]]
        );
        assert_eq!(solitons(&frames[0]), vec![3, 1]);
        assert_eq!(solitons(&frames[4]), vec![1, 3]);
        assert_eq!(evolve_carrier(&frames[3], Capacity::Infinite).unwrap().positions(), vec![10, 15, 16, 17]);
    }

    #[test]
    fn trivial_states() {
        let e = st(&[]);
        assert_eq!(evolve_leftmost(&e), e);
        assert!(solitons(&e).is_empty());
        assert_eq!(evolve_carrier(&st(&[4]), Capacity::Infinite).unwrap().positions(), vec![5]);
        let j: BoxBallState = serde_json::from_str(r#"{"boxes":[0,1,1,1,0,0,0,0,1]}"#).unwrap();
        assert_eq!(j.positions(), vec![1, 2, 3, 8]);
        assert!(serde_json::from_str::<BoxBallState>(r#"{"boxes":[2]}"#).is_err());
    }

    #[test]
    fn carrier_rule() {
        for d in 0..4 {
            for (a, b) in [(1, 0), (0, 1)] {
                let m = a.min(d);
                assert_eq!(carrier_step(a, b, d, 10), (a - m + b, m, d - m + b));
            }
        }
        // a full carrier leaves the ball in the box
        assert_eq!(carrier_step(0, 1, 2, 2), (0, 1, 2));
    }

    #[test]
    fn evolutions_agree_exhaustively() {
        for len in 0..=8 {
            for s in all_states(len) {
                assert_eq!(evolve_carrier(&s, Capacity::Infinite).unwrap(), evolve_leftmost(&s), "{s}");
            }
        }
    }

    #[test]
    fn finite_capacity() {
        let s = st(&[0, 1, 2]);
        assert_eq!(evolve_carrier(&s, Capacity::Finite(1)).unwrap().positions(), vec![1, 2, 3]);
        assert_eq!(evolve_carrier(&s, Capacity::Finite(3)).unwrap(), evolve_leftmost(&s));
    }

    #[test]
    fn totals_and_indicator() {
        let s = st(&[1, 2, 3, 8]);
        let m = s.len() as i64;
        assert_eq!(tropical_invariant(&s, m, 1), Some(4));
        assert_eq!(tropical_invariant(&s, m, 2), Some(m - 4));
        assert_eq!(calibrate_indicator_color(6), Some(2));
        let alt = BoxBallState { boxes: vec![false, true, false, true] };
        assert_eq!(tropical_invariant(&alt, 1, 2), Some(1));
    }

    #[test]
    fn carrier_chain_is_conserved() {
        assert_eq!(calibrate_conservation(6), vec![ConservationLaw::CarrierChain]);
    }
}
