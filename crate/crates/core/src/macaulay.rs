//! Macaulay matrices and exact row reduction over GF(q).
//!
//! A homogeneous Macaulay matrix M_d has one row per product m * f_j of
//! degree exactly d and one column per degree-d monomial; the inhomogeneous
//! M_{<=d} uses degree-at-most-d products and monomials. Columns are arranged
//! strictly decreasing in the term order, so the reduced row echelon form has
//! pivots on the largest possible leading monomials.
//!
//! Rows over GF(2) are bit-packed; other fields use dense byte rows. The
//! reduced row echelon form is canonical for the row space, so results do not
//! depend on elimination order.

use std::collections::HashMap;
use std::io::{self, Write};

use crate::field::{Field, FieldElement};
use crate::poly::{
    count_monomials_of_degree, monomials_of_degree, monomials_up_to_degree, Monomial, PolySystem,
    Polynomial, TermOrder,
};

/// Construction label of a row: the monomial multiplier and the index of the
/// source polynomial. Labels describe the matrix as built; they are cleared
/// by row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowLabel {
    pub multiplier: Monomial,
    pub poly_index: usize,
}

enum RowStorage {
    /// GF(2): each row is a bit vector, one u64 word per 64 columns.
    Bits { words: usize, rows: Vec<Vec<u64>> },
    /// General GF(q): rows of element representatives.
    Dense { rows: Vec<Vec<u8>> },
}

impl RowStorage {
    fn nrows(&self) -> usize {
        match self {
            RowStorage::Bits { rows, .. } => rows.len(),
            RowStorage::Dense { rows } => rows.len(),
        }
    }
}

/// A row-labelled coefficient matrix of a polynomial system in one degree
/// window, with exact row reduction over GF(q).
pub struct MacaulayMatrix {
    field: Field,
    nvars: usize,
    order: TermOrder,
    degree: u32,
    homogeneous: bool,
    columns: Vec<Monomial>,
    labels: Vec<RowLabel>,
    storage: RowStorage,
    reduced: bool,
}

impl MacaulayMatrix {
    /// Homogeneous Macaulay matrix M_d: one row per pair (monomial m of
    /// degree d - deg f_j, f_j), columns all degree-d monomials in decreasing
    /// order. Zero polynomials contribute no rows; polynomials of degree
    /// above d contribute no rows.
    ///
    /// Panics if some member is not homogeneous.
    pub fn build_homogeneous(sys: &PolySystem, d: u32, order: TermOrder) -> MacaulayMatrix {
        assert!(
            sys.is_homogeneous(),
            "non-homogeneous system passed to the homogeneous Macaulay builder"
        );
        let columns = monomials_of_degree(sys.nvars(), d, order);
        let mut m = MacaulayMatrix::empty(sys.field(), sys.nvars(), order, d, true, columns);
        let index = m.col_index();
        for (j, f) in sys.polys().iter().enumerate() {
            let Some(df) = f.degree() else { continue };
            if df > d {
                continue;
            }
            for mult in monomials_of_degree(sys.nvars(), d - df, order) {
                m.push_product_row(f, &mult, j, &index);
            }
        }
        m
    }

    /// Macaulay matrix M_{<=d}: one row per product m * f_j of degree at most
    /// d, columns all monomials of degree <= d in decreasing order.
    ///
    /// Panics if d is below the maximal degree of the system.
    pub fn build(sys: &PolySystem, d: u32, order: TermOrder) -> MacaulayMatrix {
        assert!(
            d >= sys.max_degree(),
            "Macaulay degree {d} below system degree {}",
            sys.max_degree()
        );
        let columns = monomials_up_to_degree(sys.nvars(), d, order);
        let mut m = MacaulayMatrix::empty(sys.field(), sys.nvars(), order, d, false, columns);
        let index = m.col_index();
        for (j, f) in sys.polys().iter().enumerate() {
            let Some(df) = f.degree() else { continue };
            for mult in monomials_up_to_degree(sys.nvars(), d - df, order) {
                m.push_product_row(f, &mult, j, &index);
            }
        }
        m
    }

    /// Matrix whose rows are the given polynomials themselves (multiplier 1),
    /// over the monomials of degree <= d. Used by the mutant strategy, where
    /// reduced rows and mutant multiples are fed back as rows.
    pub fn from_rows(
        field: &Field,
        nvars: usize,
        d: u32,
        order: TermOrder,
        rows: &[Polynomial],
    ) -> MacaulayMatrix {
        let columns = monomials_up_to_degree(nvars, d, order);
        let mut m = MacaulayMatrix::empty(field, nvars, order, d, false, columns);
        let index = m.col_index();
        let one = Monomial::one(nvars);
        for (j, f) in rows.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            assert!(f.degree().unwrap() <= d, "row polynomial degree exceeds {d}");
            m.push_product_row(f, &one, j, &index);
        }
        m
    }

    fn empty(
        field: &Field,
        nvars: usize,
        order: TermOrder,
        degree: u32,
        homogeneous: bool,
        columns: Vec<Monomial>,
    ) -> MacaulayMatrix {
        let ncols = columns.len();
        let storage = if field.q() == 2 {
            RowStorage::Bits {
                words: ncols.div_ceil(64),
                rows: Vec::new(),
            }
        } else {
            RowStorage::Dense { rows: Vec::new() }
        };
        MacaulayMatrix {
            field: field.clone(),
            nvars,
            order,
            degree,
            homogeneous,
            columns,
            labels: Vec::new(),
            storage,
            reduced: false,
        }
    }

    fn col_index(&self) -> HashMap<Monomial, usize> {
        self.columns
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect()
    }

    fn push_product_row(
        &mut self,
        f: &Polynomial,
        mult: &Monomial,
        poly_index: usize,
        index: &HashMap<Monomial, usize>,
    ) {
        match &mut self.storage {
            RowStorage::Bits { words, rows } => {
                let mut row = vec![0u64; *words];
                for (m, _c) in f.terms() {
                    let col = index[&m.mul(mult)];
                    row[col / 64] ^= 1u64 << (col % 64);
                }
                rows.push(row);
            }
            RowStorage::Dense { rows } => {
                let mut row = vec![0u8; self.columns.len()];
                for (m, c) in f.terms() {
                    let col = index[&m.mul(mult)];
                    row[col] = c.rep() as u8;
                }
                rows.push(row);
            }
        }
        self.labels.push(RowLabel {
            multiplier: mult.clone(),
            poly_index,
        });
    }

    pub fn nrows(&self) -> usize {
        self.storage.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn is_homogeneous_build(&self) -> bool {
        self.homogeneous
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Column monomials, strictly decreasing in the term order.
    pub fn columns(&self) -> &[Monomial] {
        &self.columns
    }

    /// Row labels as built; empty after reduction.
    pub fn labels(&self) -> &[RowLabel] {
        &self.labels
    }

    pub fn entry(&self, row: usize, col: usize) -> FieldElement {
        match &self.storage {
            RowStorage::Bits { rows, .. } => {
                let bit = (rows[row][col / 64] >> (col % 64)) & 1;
                self.field.element(bit)
            }
            RowStorage::Dense { rows } => self.field.element(rows[row][col] as u64),
        }
    }

    /// Reduces to reduced row echelon form in place and returns the rank.
    ///
    /// Duplicate rows are removed first. Pivot columns are strictly
    /// decreasing in the term order (leftmost column first, smallest row
    /// index), and zero rows are dropped. The RREF is canonical for the row
    /// space, so the result is independent of elimination order.
    pub fn rref(&mut self) -> usize {
        self.labels.clear();
        self.reduced = true;
        match &mut self.storage {
            RowStorage::Bits { rows, .. } => {
                rows.sort_unstable();
                rows.dedup();
                rref_bits(rows)
            }
            RowStorage::Dense { rows } => {
                rows.sort_unstable();
                rows.dedup();
                rref_dense(rows, &self.field)
            }
        }
    }

    /// The nonzero rows as polynomials. After [`MacaulayMatrix::rref`] their
    /// leading monomials are exactly the pivot columns.
    pub fn row_polynomials(&self) -> Vec<Polynomial> {
        let mut out = Vec::with_capacity(self.nrows());
        for r in 0..self.nrows() {
            let p = self.row_polynomial(r);
            if !p.is_zero() {
                out.push(p);
            }
        }
        out
    }

    fn row_polynomial(&self, r: usize) -> Polynomial {
        let mut p = Polynomial::zero(&self.field, self.nvars);
        match &self.storage {
            RowStorage::Bits { rows, .. } => {
                for (w, &word) in rows[r].iter().enumerate() {
                    let mut bits = word;
                    while bits != 0 {
                        let b = bits.trailing_zeros() as usize;
                        let col = w * 64 + b;
                        p.add_term(self.columns[col].clone(), self.field.one());
                        bits &= bits - 1;
                    }
                }
            }
            RowStorage::Dense { rows } => {
                for (col, &v) in rows[r].iter().enumerate() {
                    if v != 0 {
                        p.add_term(self.columns[col].clone(), self.field.element(v as u64));
                    }
                }
            }
        }
        p
    }

    /// Debug dump: header "d n_rows n_cols q", the column monomials, then one
    /// line of integer representatives per row.
    pub fn dump(&self, w: &mut impl Write) -> io::Result<()> {
        writeln!(
            w,
            "{} {} {} {}",
            self.degree,
            self.nrows(),
            self.ncols(),
            self.field.q()
        )?;
        let cols: Vec<String> = self.columns.iter().map(|m| format!("{m:?}")).collect();
        writeln!(w, "{}", cols.join(" "))?;
        for r in 0..self.nrows() {
            let vals: Vec<String> = (0..self.ncols())
                .map(|c| self.entry(r, c).rep().to_string())
                .collect();
            writeln!(w, "{}", vals.join(" "))?;
        }
        Ok(())
    }
}

fn first_set_bit(row: &[u64]) -> Option<usize> {
    for (w, &word) in row.iter().enumerate() {
        if word != 0 {
            return Some(w * 64 + word.trailing_zeros() as usize);
        }
    }
    None
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

/// RREF over GF(2) on bit-packed rows. Returns the rank; `rows` is replaced
/// by the nonzero reduced rows ordered by pivot column.
fn rref_bits(rows: &mut Vec<Vec<u64>>) -> usize {
    let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut pivot_of_col: HashMap<usize, usize> = HashMap::new();
    for row in rows.drain(..) {
        let mut r = row;
        loop {
            match first_set_bit(&r) {
                None => break,
                Some(c) => match pivot_of_col.get(&c) {
                    Some(&p) => xor_into(&mut r, &pivots[p].1),
                    None => {
                        pivot_of_col.insert(c, pivots.len());
                        pivots.push((c, r));
                        break;
                    }
                },
            }
        }
    }
    // Back-substitution: clear each pivot column from every other pivot row,
    // rightmost pivot first so referenced rows are already final.
    let mut idx: Vec<usize> = (0..pivots.len()).collect();
    idx.sort_unstable_by_key(|&i| std::cmp::Reverse(pivots[i].0));
    for &i in &idx {
        let (c, row) = (pivots[i].0, pivots[i].1.clone());
        for j in 0..pivots.len() {
            if j != i && (pivots[j].1[c / 64] >> (c % 64)) & 1 == 1 {
                xor_into(&mut pivots[j].1, &row);
            }
        }
    }
    pivots.sort_unstable_by_key(|&(c, _)| c);
    let rank = pivots.len();
    *rows = pivots.into_iter().map(|(_, r)| r).collect();
    rank
}

fn first_nonzero(row: &[u8]) -> Option<usize> {
    row.iter().position(|&v| v != 0)
}

/// r -= factor * p, starting at column `from`.
fn eliminate_dense(r: &mut [u8], p: &[u8], factor: u8, from: usize, field: &Field) {
    for k in from..r.len() {
        let pv = p[k];
        if pv != 0 {
            r[k] = field.add_raw(r[k], field.neg_raw(field.mul_raw(factor, pv)));
        }
    }
}

/// RREF over GF(q) on dense byte rows. Returns the rank; `rows` is replaced
/// by the nonzero reduced rows ordered by pivot column, each normalized to a
/// leading 1.
fn rref_dense(rows: &mut Vec<Vec<u8>>, field: &Field) -> usize {
    let mut pivots: Vec<(usize, Vec<u8>)> = Vec::new();
    let mut pivot_of_col: HashMap<usize, usize> = HashMap::new();
    for row in rows.drain(..) {
        let mut r = row;
        loop {
            match first_nonzero(&r) {
                None => break,
                Some(c) => match pivot_of_col.get(&c) {
                    Some(&p) => {
                        let factor = r[c];
                        eliminate_dense(&mut r, &pivots[p].1, factor, c, field);
                    }
                    None => {
                        let inv = field.inv_raw(r[c]);
                        for v in r.iter_mut() {
                            *v = field.mul_raw(inv, *v);
                        }
                        pivot_of_col.insert(c, pivots.len());
                        pivots.push((c, r));
                        break;
                    }
                },
            }
        }
    }
    let mut idx: Vec<usize> = (0..pivots.len()).collect();
    idx.sort_unstable_by_key(|&i| std::cmp::Reverse(pivots[i].0));
    for &i in &idx {
        let (c, row) = (pivots[i].0, pivots[i].1.clone());
        for j in 0..pivots.len() {
            if j != i && pivots[j].1[c] != 0 {
                let factor = pivots[j].1[c];
                eliminate_dense(&mut pivots[j].1, &row, factor, c, field);
            }
        }
    }
    pivots.sort_unstable_by_key(|&(c, _)| c);
    let rank = pivots.len();
    *rows = pivots.into_iter().map(|(_, r)| r).collect();
    rank
}

/// dim (F^top)_d for a list of homogeneous polynomials: the rank of the
/// homogeneous Macaulay matrix in degree d.
pub fn ideal_dim_in_degree(tops: &[Polynomial], d: u32, order: TermOrder) -> u64 {
    assert!(!tops.is_empty(), "ideal dimension of an empty generator list");
    let sys = PolySystem::new(tops.to_vec());
    let mut m = MacaulayMatrix::build_homogeneous(&sys, d, order);
    m.rref() as u64
}

/// Hilbert function of R/(tops): h(d) = dim R_d - dim (tops)_d for
/// d = 0..=d_max.
pub fn hilbert_function(tops: &[Polynomial], d_max: u32) -> Vec<u64> {
    assert!(!tops.is_empty(), "Hilbert function of an empty generator list");
    let n = tops[0].nvars();
    (0..=d_max)
        .map(|d| {
            count_monomials_of_degree(n, d) - ideal_dim_in_degree(tops, d, TermOrder::Grevlex)
        })
        .collect()
}

/// Default guard for degree loops: 2 + n(q-1) when the system contains (or
/// will receive) the field equations, else 1 + sum of (d_i - 1).
pub fn default_degree_cap(sys: &PolySystem, with_field_eqs: bool) -> u32 {
    if with_field_eqs {
        2 + sys.nvars() as u32 * (sys.field().q() as u32 - 1)
    } else {
        1 + sys
            .degrees()
            .iter()
            .map(|&d| d.saturating_sub(1))
            .sum::<u32>()
    }
}
