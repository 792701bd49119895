//! Exact sparse vectors over tensor words and fraction-free rank.

use std::collections::BTreeMap;

use crate::scalar::{FieldElement, FieldTag};

/// A basis word `x_{w_1} ⊗ … ⊗ x_{w_n}`.
pub type Word = Vec<u32>;

/// Sparse vector in `V^{⊗n}`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordVec {
    terms: BTreeMap<Word, FieldElement>,
}

impl WordVec {
    pub fn new() -> Self {
        WordVec::default()
    }

    pub fn basis(w: Word, tag: FieldTag) -> Self {
        let mut v = WordVec::new();
        v.add_term(w, FieldElement::one(tag));
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &FieldElement)> {
        self.terms.iter()
    }

    pub fn get(&self, w: &Word) -> Option<&FieldElement> {
        self.terms.get(w)
    }

    pub fn add_term(&mut self, w: Word, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                let s = &*x + &c;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &WordVec, c: &FieldElement) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn add(&mut self, other: &WordVec) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x.clone());
        }
    }
}

impl FromIterator<(Word, FieldElement)> for WordVec {
    fn from_iter<I: IntoIterator<Item = (Word, FieldElement)>>(iter: I) -> Self {
        let mut v = WordVec::new();
        for (w, c) in iter {
            v.add_term(w, c);
        }
        v
    }
}

/// Rank of a dense matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_rank(mut m: Vec<Vec<FieldElement>>, tag: FieldTag) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = FieldElement::one(tag);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in r + 1..rows {
            let lead = m[i][c].clone();
            let (upper, lower) = m.split_at_mut(i);
            for (x, y) in lower[0][c + 1..cols].iter_mut().zip(&upper[r][c + 1..cols]) {
                let num = &(&pivot * &*x) - &(&lead * y);
                *x = num.checked_div(&prev).expect("Bareiss divisor is a nonzero pivot");
            }
            m[i][c] = FieldElement::zero(tag);
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Rank of the span of sparse columns. Columns are grouped into blocks with
/// connected row support, and each block is reduced densely.
pub fn column_rank(columns: &[WordVec], tag: FieldTag) -> usize {
    let n = columns.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let mut owner: BTreeMap<&Word, usize> = BTreeMap::new();
    for (k, col) in columns.iter().enumerate() {
        for (w, _) in col.iter() {
            match owner.get(w) {
                Some(&o) => {
                    let (a, b) = (find(&mut parent, o), find(&mut parent, k));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
                None => {
                    owner.insert(w, k);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, col) in columns.iter().enumerate() {
        if col.is_zero() {
            continue;
        }
        let root = find(&mut parent, k);
        groups.entry(root).or_default().push(k);
    }
    let mut rank = 0;
    for cols in groups.values() {
        let mut rows: BTreeMap<&Word, usize> = BTreeMap::new();
        for &k in cols {
            for (w, _) in columns[k].iter() {
                let next = rows.len();
                rows.entry(w).or_insert(next);
            }
        }
        // transpose: one row per column vector, rank is the same
        let mut m = vec![vec![FieldElement::zero(tag); rows.len()]; cols.len()];
        for (i, &k) in cols.iter().enumerate() {
            for (w, c) in columns[k].iter() {
                m[i][rows[w]] = c.clone();
            }
        }
        rank += bareiss_rank(m, tag);
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> FieldElement {
        FieldElement::from_int(FieldTag::Rat, n)
    }

    #[test]
    fn bareiss_small() {
        let m = vec![vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)], vec![r(1), r(0), r(1)]];
        assert_eq!(bareiss_rank(m, FieldTag::Rat), 2);
        let m = vec![vec![r(0), r(1)], vec![r(1), r(0)]];
        assert_eq!(bareiss_rank(m, FieldTag::Rat), 2);
        let m = vec![vec![r(0), r(0)], vec![r(0), r(0)]];
        assert_eq!(bareiss_rank(m, FieldTag::Rat), 0);
    }

    #[test]
    fn word_vec_cancels() {
        let mut v = WordVec::basis(vec![0, 1], FieldTag::Rat);
        v.add_term(vec![0, 1], r(-1));
        assert!(v.is_zero());
    }

    #[test]
    fn column_rank_blocks() {
        let cols = vec![
            [(vec![0], r(1)), (vec![1], r(1))].into_iter().collect::<WordVec>(),
            [(vec![0], r(2)), (vec![1], r(2))].into_iter().collect(),
            [(vec![5], r(3))].into_iter().collect(),
            WordVec::new(),
        ];
        assert_eq!(column_rank(&cols, FieldTag::Rat), 2);
    }

    #[test]
    fn bareiss_over_cyclotomics() {
        let tag = FieldTag::Cyclo(3);
        let z = crate::scalar::embed(&crate::scalar::MonoScalar::root_of_unity(3, 1), tag).unwrap();
        let one = FieldElement::one(tag);
        // [[1, z], [z^2, 1]] is singular since z^3 = 1
        let m = vec![vec![one.clone(), z.clone()], vec![&z * &z, one.clone()]];
        assert_eq!(bareiss_rank(m, tag), 1);
    }
}
