use std::fmt;

use serde::{Deserialize, Serialize};

use super::LsymError;

/// A partition, stored without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self, LsymError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(LsymError::InvalidPartition(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// `(k, k−1, …, 1)`; the trailing zero of the staircase is implicit.
    pub fn staircase(k: u32) -> Self {
        Partition { parts: (1..=k).rev().collect() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `λ_i` for 1-based `i`, zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return u32::MAX;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Self {
        let cols = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=cols).map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32).collect();
        Partition { parts }
    }

    /// Whether `other ⊆ self` cellwise.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    pub fn scaled(&self, k: u32) -> Self {
        Partition { parts: if k == 0 { Vec::new() } else { self.parts.iter().map(|p| p * k).collect() } }
    }

    /// Componentwise sum, padding with zeros.
    pub fn plus(&self, other: &Partition) -> Vec<u32> {
        let l = self.len().max(other.len());
        (1..=l).map(|i| self.part(i) + other.part(i)).collect()
    }

    /// All partitions fitting in an `rows × cols` box.
    pub fn in_box(rows: usize, cols: u32) -> Vec<Partition> {
        fn go(rows: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            out.push(Partition::new(cur.clone()).expect("weakly decreasing"));
            if cur.len() == rows {
                return;
            }
            for p in 1..=cap {
                cur.push(p);
                go(rows, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(rows, cols, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// All partitions of `size`.
    pub fn of_size(size: u32) -> Vec<Partition> {
        Partition::in_box(size as usize, size).into_iter().filter(|p| p.size() == size).collect()
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = LsymError;
    fn try_from(v: Vec<u32>) -> Result<Self, LsymError> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// The skew shape `outer / inner`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SkewRepr", into = "SkewRepr")]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

#[derive(Serialize, Deserialize)]
struct SkewRepr {
    outer: Partition,
    #[serde(default)]
    inner: Partition,
}

impl TryFrom<SkewRepr> for SkewShape {
    type Error = LsymError;
    fn try_from(r: SkewRepr) -> Result<Self, LsymError> {
        SkewShape::new(r.outer, r.inner)
    }
}

impl From<SkewShape> for SkewRepr {
    fn from(s: SkewShape) -> Self {
        SkewRepr { outer: s.outer, inner: s.inner }
    }
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self, LsymError> {
        if !outer.contains(&inner) {
            return Err(LsymError::InvalidShape(outer, inner));
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(p: Partition) -> Self {
        SkewShape { outer: p, inner: Partition::empty() }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn is_straight(&self) -> bool {
        self.inner.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.outer.size() - self.inner.size()
    }

    pub fn rows(&self) -> usize {
        self.outer.len()
    }

    /// Whether the 1-based cell `(i, j)` belongs to the skew shape.
    pub fn has_cell(&self, i: usize, j: u32) -> bool {
        i >= 1 && j >= 1 && j <= self.outer.part(i) && j > self.inner.part(i)
    }

    /// Cells in row-major (English reading) order, 1-based.
    pub fn cells(&self) -> Vec<(usize, u32)> {
        (1..=self.rows())
            .flat_map(|i| ((self.inner.part(i) + 1)..=self.outer.part(i)).map(move |j| (i, j)))
            .collect()
    }

    /// All skew shapes `λ/μ` with `λ` inside an `rows × cols` box.
    pub fn all_in_box(rows: usize, cols: u32) -> Vec<SkewShape> {
        let ps = Partition::in_box(rows, cols);
        let mut out = Vec::new();
        for outer in &ps {
            for inner in &ps {
                if outer.contains(inner) {
                    out.push(SkewShape { outer: outer.clone(), inner: inner.clone() });
                }
            }
        }
        out
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.is_empty() {
            write!(f, "{}", self.outer)
        } else {
            write!(f, "{}/{}", self.outer, self.inner)
        }
    }
}

/// A filling of a skew shape. `rows[i]` lists the entries of row `i + 1`
/// outside the inner shape, left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TableauRepr", into = "TableauRepr")]
pub struct Tableau {
    inner: Partition,
    rows: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct TableauRepr {
    #[serde(default)]
    inner: Partition,
    rows: Vec<Vec<u32>>,
}

impl TryFrom<TableauRepr> for Tableau {
    type Error = LsymError;
    fn try_from(r: TableauRepr) -> Result<Self, LsymError> {
        Tableau::new(r.inner, r.rows)
    }
}

impl From<Tableau> for TableauRepr {
    fn from(t: Tableau) -> Self {
        TableauRepr { inner: t.inner, rows: t.rows }
    }
}

impl Tableau {
    /// Validates shape and semistandardness.
    pub fn new(inner: Partition, rows: Vec<Vec<u32>>) -> Result<Self, LsymError> {
        let t = Tableau { inner, rows };
        t.validate()?;
        Ok(t)
    }

    pub fn straight(rows: Vec<Vec<u32>>) -> Result<Self, LsymError> {
        Tableau::new(Partition::empty(), rows)
    }

    fn validate(&self) -> Result<(), LsymError> {
        let bad = |msg: &str| Err(LsymError::InvalidTableau(msg.to_string()));
        let mut rows = self.rows.clone();
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        if rows.len() != self.rows.len() {
            return bad("trailing empty rows");
        }
        let outer: Vec<u32> = (1..=self.rows.len().max(self.inner.len()))
            .map(|i| self.inner.part(i) + self.rows.get(i - 1).map_or(0, |r| r.len() as u32))
            .collect();
        if outer.windows(2).any(|w| w[0] < w[1]) {
            return bad("row lengths do not form a skew shape");
        }
        for row in &self.rows {
            if row.contains(&0) {
                return bad("entries must be positive");
            }
            if row.windows(2).any(|w| w[0] > w[1]) {
                return bad("rows must weakly increase");
            }
        }
        for (i, j) in self.shape().cells() {
            if let (Some(a), Some(b)) = (self.entry(i - 1, j), self.entry(i, j)) {
                if a >= b {
                    return bad("columns must strictly increase");
                }
            }
        }
        Ok(())
    }

    pub fn shape(&self) -> SkewShape {
        let l = self.rows.len().max(self.inner.len());
        let outer = (1..=l)
            .map(|i| self.inner.part(i) + self.rows.get(i - 1).map_or(0, |r| r.len() as u32))
            .collect();
        SkewShape { outer: Partition::new(outer).expect("validated"), inner: self.inner.clone() }
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Entry at the 1-based cell `(i, j)`, if that cell is in the skew shape.
    pub fn entry(&self, i: usize, j: u32) -> Option<u32> {
        if i == 0 || j <= self.inner.part(i) {
            return None;
        }
        self.rows.get(i - 1)?.get((j - self.inner.part(i) - 1) as usize).copied()
    }

    /// `((i, j), entry)` in row-major order.
    pub fn cells(&self) -> Vec<((usize, u32), u32)> {
        let mut out = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            let i = r + 1;
            for (c, &v) in row.iter().enumerate() {
                out.push(((i, self.inner.part(i) + 1 + c as u32), v));
            }
        }
        out
    }

    /// Multiplicities of the letters `1..=max`.
    pub fn weight(&self, max: u32) -> Vec<u32> {
        let mut w = vec![0; max as usize];
        for row in &self.rows {
            for &v in row {
                if v <= max {
                    w[v as usize - 1] += 1;
                }
            }
        }
        w
    }

    pub fn max_entry(&self) -> u32 {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{}", rows.join(","))
    }
}

/// Lazy enumeration of semistandard tableaux of a skew shape with entries in
/// `1..=max_entry`, in lexicographic order of the row-major entry vector.
pub struct SsytIter {
    shape: SkewShape,
    cells: Vec<(usize, u32)>,
    /// index into `cells` of the left and upper neighbours, if in the shape
    left: Vec<Option<usize>>,
    up: Vec<Option<usize>>,
    max: u32,
    cur: Vec<u32>,
    started: bool,
    done: bool,
}

pub fn ssyt_enumerate(shape: &SkewShape, max_entry: u32) -> SsytIter {
    let cells = shape.cells();
    let index = |i: usize, j: u32| cells.iter().position(|&c| c == (i, j));
    let left = cells.iter().map(|&(i, j)| if shape.has_cell(i, j.wrapping_sub(1)) { index(i, j - 1) } else { None }).collect();
    let up = cells.iter().map(|&(i, j)| if shape.has_cell(i.wrapping_sub(1), j) { index(i - 1, j) } else { None }).collect();
    let n = cells.len();
    SsytIter { shape: shape.clone(), cells, left, up, max: max_entry, cur: vec![0; n], started: false, done: false }
}

impl SsytIter {
    fn lower_bound(&self, p: usize) -> u32 {
        let l = self.left[p].map_or(1, |q| self.cur[q]);
        let u = self.up[p].map_or(1, |q| self.cur[q] + 1);
        l.max(u)
    }

    /// Minimal completion of positions `from..`; false if it overflows.
    fn fill_from(&mut self, from: usize) -> bool {
        for p in from..self.cells.len() {
            let v = self.lower_bound(p);
            if v > self.max {
                return false;
            }
            self.cur[p] = v;
        }
        true
    }

    fn build(&self) -> Tableau {
        let mut rows: Vec<Vec<u32>> = vec![Vec::new(); self.shape.rows()];
        for (p, &(i, _)) in self.cells.iter().enumerate() {
            rows[i - 1].push(self.cur[p]);
        }
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        Tableau { inner: self.shape.inner().clone(), rows }
    }
}

impl Iterator for SsytIter {
    type Item = Tableau;

    fn next(&mut self) -> Option<Tableau> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.fill_from(0) {
                return Some(self.build());
            }
            self.done = true;
            return None;
        }
        for p in (0..self.cells.len()).rev() {
            if self.cur[p] < self.max {
                self.cur[p] += 1;
                if self.fill_from(p + 1) {
                    return Some(self.build());
                }
            }
        }
        self.done = true;
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn conjugates_and_staircases() {
        assert_eq!(part(&[4, 2, 1]).conjugate(), part(&[3, 2, 1, 1]));
        assert_eq!(part(&[2, 1, 0, 0]), part(&[2, 1]));
        assert_eq!(Partition::staircase(3), part(&[3, 2, 1]));
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let s21 = SkewShape::straight(part(&[2, 1]));
        assert_eq!(ssyt_enumerate(&s21, 3).count(), 8);
        assert_eq!(ssyt_enumerate(&SkewShape::straight(part(&[1])), 5).count(), 5);
        let empty: Vec<_> = ssyt_enumerate(&SkewShape::straight(Partition::empty()), 4).collect();
        assert_eq!(empty.len(), 1);
        assert!(empty[0].rows().is_empty());
        // more rows than letters: nothing
        assert_eq!(ssyt_enumerate(&SkewShape::straight(part(&[1, 1, 1])), 2).count(), 0);
        // skew (2,1)/(1): two disconnected cells
        let sk = SkewShape::new(part(&[2, 1]), part(&[1])).unwrap();
        assert_eq!(ssyt_enumerate(&sk, 3).count(), 9);
    }

    #[test]
    fn enumerated_tableaux_are_valid_and_distinct() {
        let sh = SkewShape::new(part(&[3, 2, 2]), part(&[1])).unwrap();
        let all: Vec<_> = ssyt_enumerate(&sh, 3).collect();
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
        for t in &all {
            Tableau::new(t.inner().clone(), t.rows().to_vec()).unwrap();
            assert_eq!(t.shape(), sh);
        }
    }

    #[test]
    fn tableau_json_round_trip() {
        let t = Tableau::new(part(&[1]), vec![vec![1, 2], vec![3]]).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"inner":[1],"rows":[[1,2],[3]]}"#);
        let back: Tableau = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        assert!(Tableau::straight(vec![vec![2, 1]]).is_err());
        assert!(Tableau::straight(vec![vec![1, 2], vec![1]]).is_err());
    }

    #[test]
    fn skew_json() {
        let s: SkewShape = serde_json::from_str(r#"{"outer":[3,1],"inner":[1]}"#).unwrap();
        assert_eq!(s.size(), 3);
        assert!(serde_json::from_str::<SkewShape>(r#"{"outer":[1],"inner":[2]}"#).is_err());
    }
}
