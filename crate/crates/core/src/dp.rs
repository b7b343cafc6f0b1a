//! Storage shared by the cost-indexed tables of the weighted propagators.
//!
//! Rows are costs `0..=zcU`, columns variables `0..n`. The virtual column
//! `-1` (empty prefix) is not stored: it holds the empty cover at cost 0 and
//! dummies elsewhere.

use std::fmt;

/// Stand-in for infinity in counts and lengths.
pub const INF: u32 = u32::MAX;

/// Which end a table was built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// One entry of a cost table.
pub trait DpEntry: Copy + PartialEq + fmt::Debug {
    const DUMMY: Self;
    /// Entry of the empty prefix at cost 0.
    const ORIGIN: Self;

    fn q(&self) -> u32;
    fn l(&self) -> u32;

    fn is_dummy(&self) -> bool {
        self.q() == INF
    }

    /// `(q, l)` order; dummies compare last.
    fn key(&self) -> (u32, u32) {
        (self.q(), self.l())
    }

    fn render(&self) -> String;
}

/// Column-major table of entries with rows `0..=zcu`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid<E> {
    rows: usize,
    cols: usize,
    cells: Vec<E>,
    direction: Direction,
}

impl<E: DpEntry> Grid<E> {
    pub(crate) fn new(rows: usize, cols: usize, direction: Direction) -> Self {
        Grid {
            rows,
            cols,
            cells: vec![E::DUMMY; rows * cols],
            direction,
        }
    }

    /// `zcU + 1`
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn zcu(&self) -> usize {
        self.rows - 1
    }

    /// Entry at cost `c`, column `j`; `j = -1` is the empty prefix.
    #[inline]
    pub fn get(&self, c: usize, j: isize) -> E {
        if j < 0 {
            if c == 0 {
                E::ORIGIN
            } else {
                E::DUMMY
            }
        } else {
            self.cells[j as usize * self.rows + c]
        }
    }

    /// Column `j` as a slice over costs; `j = -1` is not stored.
    #[inline]
    pub fn column(&self, j: usize) -> &[E] {
        &self.cells[j * self.rows..(j + 1) * self.rows]
    }

    #[inline]
    pub(crate) fn column_mut(&mut self, j: usize) -> &mut [E] {
        &mut self.cells[j * self.rows..(j + 1) * self.rows]
    }

    /// Entries of column `j` indexed by cost, virtual column included.
    pub(crate) fn column_vec(&self, j: isize) -> Vec<E> {
        (0..self.rows).map(|c| self.get(c, j)).collect()
    }

    /// Lowest `q` in the last column.
    pub fn min_q(&self) -> u32 {
        self.column(self.cols - 1).iter().map(|e| e.q()).min().unwrap_or(INF)
    }

    /// Lowest cost whose last-column entry uses at most `max_q` sequences.
    pub fn min_cost_within(&self, max_q: i64) -> Option<usize> {
        self.column(self.cols - 1)
            .iter()
            .position(|e| !e.is_dummy() && (e.q() as i64) <= max_q)
    }

    /// Checks that row 0 has no dummy entry, that the non-dummy entries of
    /// each column occupy consecutive rows, and that they never get worse
    /// in `(q, l)` order as the cost grows. Returns the first violation.
    pub fn check_structure(&self) -> Result<(), String> {
        for j in 0..self.cols {
            let col = self.column(j);
            if col[0].is_dummy() {
                return Err(format!("row 0 is dummy in column {j}"));
            }
            let last = col.iter().rposition(|e| !e.is_dummy()).unwrap_or(0);
            if let Some(c) = col[..=last].iter().position(|e| e.is_dummy()) {
                return Err(format!("column {j}: dummy at cost {c} below cost {last}"));
            }
            for c in 1..=last {
                if col[c].key() > col[c - 1].key() {
                    return Err(format!(
                        "column {j}: {} at cost {c} after {} at cost {}",
                        col[c].render(),
                        col[c - 1].render(),
                        c - 1
                    ));
                }
            }
        }
        Ok(())
    }

    /// Aligned text with one row per cost and one column per variable.
    /// Dummy entries are left blank. `header` labels the columns.
    pub fn render(&self, header: &[String]) -> String {
        let mut out = String::new();
        let labels: Vec<String> = (0..self.rows).map(|c| c.to_string()).collect();
        let mut width = header.iter().map(|h| h.len()).max().unwrap_or(0);
        for c in 0..self.rows {
            for j in 0..self.cols {
                width = width.max(self.get(c, j as isize).render().len());
            }
        }
        let lw = labels.iter().map(|l| l.len()).max().unwrap_or(1).max(1);
        out.push_str(&format!("{:>lw$}", "c"));
        for h in header {
            out.push_str(&format!(" | {h:^width$}"));
        }
        out.push('\n');
        for (c, label) in labels.iter().enumerate() {
            out.push_str(&format!("{label:>lw$}"));
            for j in 0..self.cols {
                let e = self.get(c, j as isize);
                let s = if e.is_dummy() { String::new() } else { e.render() };
                out.push_str(&format!(" | {s:^width$}"));
            }
            out.push('\n');
        }
        out
    }
}

pub(crate) fn show(v: u32) -> String {
    if v == INF {
        "inf".to_string()
    } else {
        v.to_string()
    }
}

/// Best entry among rows `0..=c` for every `c`, by `(q, l)` key.
pub(crate) fn prefix_best<E: DpEntry>(col: &[E]) -> Vec<E> {
    let mut out = Vec::with_capacity(col.len());
    let mut best = E::DUMMY;
    for &e in col {
        if !e.is_dummy() && (best.is_dummy() || e.key() < best.key()) {
            best = e;
        }
        out.push(best);
    }
    out
}
