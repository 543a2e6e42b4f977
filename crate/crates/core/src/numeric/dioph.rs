//! Minimal natural solutions of linear Diophantine systems `A x = b`.
//!
//! After a presolve, the solver runs the Contejean–Devie completion procedure on the
//! homogenized system `A x - b y = 0`. Minimal solutions with `y = 1` are the
//! minimal particular solutions of `A x = b`, those with `y = 0` form the
//! Hilbert basis of `A x = 0`. Every natural solution of `A x = b` is a
//! particular solution plus a natural combination of basis vectors.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// An integer system `A x = b` over natural unknowns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiophSystem {
    rows: Vec<Vec<i64>>,
    rhs: Vec<i64>,
    vars: usize,
}

impl DiophSystem {
    pub fn new(rows: Vec<Vec<i64>>, rhs: Vec<i64>, vars: usize) -> Result<Self> {
        if rows.len() != rhs.len() {
            return Err(Error::Structure(format!(
                "{} rows but {} right-hand sides",
                rows.len(),
                rhs.len()
            )));
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != vars) {
            return Err(Error::Structure(format!(
                "row {bad} has {} coefficients, expected {vars}",
                rows[bad].len()
            )));
        }
        Ok(DiophSystem { rows, rhs, vars })
    }

    /// Builds a system from rows of the form `[a_1, …, a_n, b]`.
    pub fn from_augmented(rows: &[Vec<i64>]) -> Result<Self> {
        let vars = rows.first().map_or(0, |r| r.len().saturating_sub(1));
        let (a, b) = rows
            .iter()
            .map(|r| {
                let mut r = r.clone();
                let b = r.pop().unwrap_or(0);
                (r, b)
            })
            .unzip();
        DiophSystem::new(a, b, vars)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn rhs(&self) -> &[i64] {
        &self.rhs
    }

    pub fn is_solution(&self, x: &[u64]) -> bool {
        x.len() == self.vars
            && self.rows.iter().zip(&self.rhs).all(|(row, &b)| {
                let lhs: i128 = row
                    .iter()
                    .zip(x)
                    .map(|(&a, &v)| a as i128 * v as i128)
                    .sum();
                lhs == b as i128
            })
    }

    pub fn is_homogeneous_solution(&self, x: &[u64]) -> bool {
        x.len() == self.vars
            && self.rows.iter().all(|row| {
                row.iter()
                    .zip(x)
                    .map(|(&a, &v)| a as i128 * v as i128)
                    .sum::<i128>()
                    == 0
            })
    }
}

/// Minimal particular solutions plus the Hilbert basis of the homogeneous part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionDescription {
    pub particular: Vec<Vec<u64>>,
    pub homogeneous: Vec<Vec<u64>>,
}

impl SolutionDescription {
    pub fn is_solvable(&self) -> bool {
        !self.particular.is_empty()
    }

    /// Whether variable `i` takes arbitrarily large values over the solution set.
    pub fn unbounded(&self, i: usize) -> bool {
        self.homogeneous.iter().any(|h| h[i] > 0)
    }

    /// The largest value of variable `i` over all solutions, if finite.
    pub fn bound(&self, i: usize) -> Option<u64> {
        if self.unbounded(i) {
            None
        } else {
            self.particular.iter().map(|p| p[i]).max()
        }
    }
}

/// Computes the complete set of minimal solutions.
///
/// Rows of the shapes `a·x = c`, `a·(x - y) = c` and sign-definite rows with
/// `c = 0` are eliminated first; what remains is split into independent
/// blocks, each solved by completion. `max_basis` caps the number of minimal
/// solutions, the size of any search frontier and the product of the
/// per-block particular solutions.
pub fn solve_nat(sys: &DiophSystem, max_basis: usize) -> Result<SolutionDescription> {
    let Some(pre) = presolve(sys)? else {
        return unsolvable(sys, max_basis);
    };
    let n = sys.vars;
    let mut particular: Vec<Vec<u64>> = vec![vec![0; n]];
    let mut homogeneous = Vec::new();
    for (vars, rows) in blocks(&pre) {
        let columns: Vec<Vec<i64>> = vars
            .iter()
            .map(|&j| rows.iter().map(|&r| pre.rows[r][j]).collect())
            .collect();
        let rhs: Vec<i64> = rows.iter().map(|&r| pre.rhs[r]).collect();
        let (part, hom) = complete(&columns, &rhs, max_basis)?;
        if part.is_empty() {
            return unsolvable(sys, max_basis);
        }
        let spread = |x: &[u64], base: &mut Vec<u64>| {
            for (&j, &v) in vars.iter().zip(x) {
                base[j] = v;
            }
        };
        for h in &hom {
            let mut full = vec![0; n];
            spread(h, &mut full);
            homogeneous.push(full);
        }
        let mut next = Vec::with_capacity(particular.len() * part.len());
        for p in &particular {
            for q in &part {
                let mut full = p.clone();
                spread(q, &mut full);
                next.push(full);
                if next.len() > max_basis {
                    return Err(Error::budget("max_basis", max_basis)
                        .with_context("product of block solutions"));
                }
            }
        }
        particular = next;
    }
    for p in &mut particular {
        pre.lift(p, false);
    }
    for h in &mut homogeneous {
        pre.lift(h, true);
    }
    sort_vectors(&mut particular);
    sort_vectors(&mut homogeneous);
    Ok(SolutionDescription {
        particular,
        homogeneous,
    })
}

/// No particular solutions; the basis comes from `A x = 0`.
fn unsolvable(sys: &DiophSystem, max_basis: usize) -> Result<SolutionDescription> {
    let homogeneous = DiophSystem {
        rows: sys.rows.clone(),
        rhs: vec![0; sys.rhs.len()],
        vars: sys.vars,
    };
    Ok(SolutionDescription {
        particular: vec![],
        homogeneous: solve_nat(&homogeneous, max_basis)?.homogeneous,
    })
}

/// A variable removed by [`presolve`].
enum Elim {
    Fixed { var: usize, value: u64 },
    /// `var = of + offset`
    Alias { var: usize, of: usize, offset: u64 },
}

struct Presolved {
    rows: Vec<Vec<i64>>,
    rhs: Vec<i64>,
    live: Vec<bool>,
    elims: Vec<Elim>,
}

impl Presolved {
    fn fix(&mut self, var: usize, value: u64) -> Result<()> {
        let v = i64::try_from(value).map_err(|_| Error::Overflow("Diophantine presolve"))?;
        for (row, b) in self.rows.iter_mut().zip(&mut self.rhs) {
            *b = row[var]
                .checked_mul(v)
                .and_then(|p| b.checked_sub(p))
                .ok_or(Error::Overflow("Diophantine presolve"))?;
            row[var] = 0;
        }
        self.live[var] = false;
        self.elims.push(Elim::Fixed { var, value });
        Ok(())
    }

    fn alias(&mut self, var: usize, of: usize, offset: u64) -> Result<()> {
        let d = i64::try_from(offset).map_err(|_| Error::Overflow("Diophantine presolve"))?;
        for (row, b) in self.rows.iter_mut().zip(&mut self.rhs) {
            let c = row[var];
            row[of] = row[of].checked_add(c).ok_or(Error::Overflow("Diophantine presolve"))?;
            *b = c
                .checked_mul(d)
                .and_then(|p| b.checked_sub(p))
                .ok_or(Error::Overflow("Diophantine presolve"))?;
            row[var] = 0;
        }
        self.live[var] = false;
        self.elims.push(Elim::Alias { var, of, offset });
        Ok(())
    }

    /// Restores eliminated coordinates of a solution (or of a homogeneous
    /// solution, where fixed values and offsets are zero).
    fn lift(&self, x: &mut [u64], homogeneous: bool) {
        for e in self.elims.iter().rev() {
            match *e {
                Elim::Fixed { var, value } => x[var] = if homogeneous { 0 } else { value },
                Elim::Alias { var, of, offset } => {
                    x[var] = x[of] + if homogeneous { 0 } else { offset }
                }
            }
        }
    }
}

/// Eliminates easy rows; `None` if they already show there is no solution.
fn presolve(sys: &DiophSystem) -> Result<Option<Presolved>> {
    let mut p = Presolved {
        rows: sys.rows.clone(),
        rhs: sys.rhs.clone(),
        live: vec![true; sys.vars],
        elims: vec![],
    };
    let mut changed = true;
    while changed {
        changed = false;
        let mut i = 0;
        while i < p.rows.len() {
            let nz: Vec<usize> = (0..sys.vars).filter(|&j| p.rows[i][j] != 0).collect();
            let b = p.rhs[i];
            let positive = nz.iter().all(|&j| p.rows[i][j] > 0);
            let negative = nz.iter().all(|&j| p.rows[i][j] < 0);
            if (positive && b < 0) || (negative && b > 0) {
                return Ok(None);
            }
            match nz.len() {
                0 => {}
                1 => {
                    let a = p.rows[i][nz[0]];
                    if b % a != 0 {
                        return Ok(None);
                    }
                    p.fix(nz[0], (b / a) as u64)?;
                }
                2 if p.rows[i][nz[0]] == -p.rows[i][nz[1]] => {
                    let a = p.rows[i][nz[0]];
                    if b % a != 0 {
                        return Ok(None);
                    }
                    let d = b / a;
                    if d >= 0 {
                        p.alias(nz[0], nz[1], d as u64)?;
                    } else {
                        p.alias(nz[1], nz[0], d.unsigned_abs())?;
                    }
                }
                _ if b == 0 && (positive || negative) => {
                    for &j in &nz {
                        p.fix(j, 0)?;
                    }
                }
                _ => {
                    i += 1;
                    continue;
                }
            }
            p.rows.swap_remove(i);
            p.rhs.swap_remove(i);
            changed = true;
        }
    }
    Ok(Some(p))
}

/// Live variables grouped by shared rows, each with the rows it uses.
fn blocks(p: &Presolved) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = p.live.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut x = x;
        while parent[x] != r {
            let next = parent[x];
            parent[x] = r;
            x = next;
        }
        r
    }
    for row in &p.rows {
        let mut vars = (0..n).filter(|&j| row[j] != 0);
        if let Some(first) = vars.next() {
            for j in vars {
                let (a, b) = (find(&mut parent, first), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut out: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut index = vec![usize::MAX; n];
    for j in (0..n).filter(|&j| p.live[j]) {
        let r = find(&mut parent, j);
        if index[r] == usize::MAX {
            index[r] = out.len();
            out.push((vec![], vec![]));
        }
        out[index[r]].0.push(j);
    }
    for (i, row) in p.rows.iter().enumerate() {
        if let Some(j) = (0..n).find(|&j| row[j] != 0) {
            let r = find(&mut parent, j);
            out[index[r]].1.push(i);
        }
    }
    out
}

type Vectors = Vec<Vec<u64>>;

/// Contejean–Devie completion on the homogenized block `Σ x_j·col_j - rhs·y = 0`.
/// Returns the minimal particular solutions and the Hilbert basis.
fn complete(
    columns: &[Vec<i64>],
    rhs: &[i64],
    max_basis: usize,
) -> Result<(Vectors, Vectors)> {
    let n = columns.len();
    let inhomogeneous = rhs.iter().any(|&b| b != 0);
    let mut columns = columns.to_vec();
    if inhomogeneous {
        columns.push(rhs.iter().map(|&b| -b).collect());
    }
    let width = columns.len();

    let mut basis: Vec<Vec<u64>> = Vec::new();
    let mut frontier: HashMap<Vec<u64>, Vec<i64>> =
        (0..width).map(|j| (unit(width, j), columns[j].clone())).collect();

    while !frontier.is_empty() {
        let mut next: HashMap<Vec<u64>, Vec<i64>> = HashMap::new();
        let mut found = Vec::new();
        for (x, image) in &frontier {
            if image.iter().all(|&v| v == 0) {
                found.push(x.clone());
                continue;
            }
            for (j, col) in columns.iter().enumerate() {
                if inhomogeneous && j == n && x[n] >= 1 {
                    continue;
                }
                let dot: i128 = image
                    .iter()
                    .zip(col)
                    .map(|(&a, &b)| a as i128 * b as i128)
                    .sum();
                if dot >= 0 {
                    continue;
                }
                let mut y = x.clone();
                y[j] += 1;
                if next.contains_key(&y) || basis.iter().any(|b| dominates(&y, b)) {
                    continue;
                }
                let img = image
                    .iter()
                    .zip(col)
                    .map(|(&a, &b)| a.checked_add(b))
                    .collect::<Option<Vec<i64>>>()
                    .ok_or(Error::Overflow("Diophantine solver"))?;
                next.insert(y, img);
                if next.len() > max_basis {
                    return Err(Error::budget("max_basis", max_basis)
                        .with_context("Diophantine search frontier"));
                }
            }
        }
        basis.extend(found);
        if basis.len() > max_basis {
            return Err(
                Error::budget("max_basis", max_basis).with_context("Diophantine basis size")
            );
        }
        // Candidates produced in this level may dominate solutions found at the same level.
        next.retain(|y, _| !basis.iter().any(|b| dominates(y, b)));
        frontier = next;
    }

    if !inhomogeneous {
        return Ok((vec![vec![0; n]], basis));
    }
    let mut particular = Vec::new();
    let mut homogeneous = Vec::new();
    for mut v in basis {
        if v.pop() == Some(1) {
            particular.push(v);
        } else {
            homogeneous.push(v);
        }
    }
    Ok((particular, homogeneous))
}

/// Whether variable `i` is unbounded over the natural solutions of `sys`.
pub fn variable_unbounded(sys: &DiophSystem, i: usize, max_basis: usize) -> Result<bool> {
    if i >= sys.vars {
        return Err(Error::Structure(format!(
            "variable index {i} out of range (system has {} variables)",
            sys.vars
        )));
    }
    let sol = solve_nat(sys, max_basis)?;
    if !sol.is_solvable() {
        return Err(Error::Precondition(
            "variable_unbounded requires a solvable system".into(),
        ));
    }
    Ok(sol.unbounded(i))
}

fn unit(width: usize, j: usize) -> Vec<u64> {
    let mut v = vec![0; width];
    v[j] = 1;
    v
}

fn dominates(y: &[u64], b: &[u64]) -> bool {
    y.iter().zip(b).all(|(a, b)| a >= b)
}

/// Orders vectors by coordinate sum, ties lexicographically.
pub(crate) fn sort_vectors(vs: &mut [Vec<u64>]) {
    vs.sort_by(|a, b| {
        let sa: u64 = a.iter().sum();
        let sb: u64 = b.iter().sum();
        sa.cmp(&sb).then_with(|| a.cmp(b))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(rows: &[&[i64]]) -> DiophSystem {
        DiophSystem::from_augmented(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn diagonal_system() {
        // x - y = 0
        let s = solve_nat(&sys(&[&[1, -1, 0]]), 1000).unwrap();
        assert_eq!(s.particular, vec![vec![0, 0]]);
        assert_eq!(s.homogeneous, vec![vec![1, 1]]);
    }

    #[test]
    fn affine_system() {
        // 2x - y = 1; frozen by brute force over (x, y) <= (4, 8)
        let s = solve_nat(&sys(&[&[2, -1, 1]]), 1000).unwrap();
        assert_eq!(s.particular, vec![vec![1, 1]]);
        assert_eq!(s.homogeneous, vec![vec![1, 2]]);
    }

    #[test]
    fn parity_obstruction() {
        let s = solve_nat(&sys(&[&[2, -2, 1]]), 1000).unwrap();
        assert!(!s.is_solvable());
    }

    #[test]
    fn unboundedness_queries() {
        assert!(variable_unbounded(&sys(&[&[1, -1, 0]]), 0, 1000).unwrap());
        assert!(!variable_unbounded(&sys(&[&[1, 1, 3]]), 0, 1000).unwrap());
        assert!(variable_unbounded(&sys(&[&[2, -1, 1]]), 1, 1000).unwrap());
        assert!(matches!(
            variable_unbounded(&sys(&[&[2, -2, 1]]), 0, 1000),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn bounded_variable_maximum() {
        // x + y = 3
        let s = solve_nat(&sys(&[&[1, 1, 3]]), 1000).unwrap();
        assert_eq!(s.particular.len(), 4);
        assert_eq!(s.bound(0), Some(3));
        assert!(s.homogeneous.is_empty());
    }

    #[test]
    fn empty_system_has_unit_basis() {
        let s = solve_nat(&DiophSystem::new(vec![], vec![], 2).unwrap(), 10).unwrap();
        assert_eq!(s.particular, vec![vec![0, 0]]);
        assert_eq!(s.homogeneous, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn budget_is_reported() {
        let err = solve_nat(&sys(&[&[5, -7, 3, 0]]), 2).unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn dimension_mismatch_rejected() {
        assert!(DiophSystem::new(vec![vec![1, 2]], vec![0], 3).is_err());
    }
}
