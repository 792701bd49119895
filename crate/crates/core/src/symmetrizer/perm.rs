use std::fmt;

/// A permutation of `0..n` in one-line notation: position `i` holds `σ(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_one_line(v: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; v.len()];
        for &x in &v {
            if x >= v.len() || std::mem::replace(&mut seen[x], true) {
                return None;
            }
        }
        Some(Permutation(v))
    }

    /// The simple transposition `s_i` swapping `i` and `i + 1`.
    pub fn simple(n: usize, i: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(i, i + 1);
        Permutation(v)
    }

    /// Every permutation of `0..n`, in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation(cur.clone()));
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("a larger entry exists");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// The permutation with the largest number of inversions.
    pub fn longest(n: usize) -> Self {
        Permutation((0..n).rev().collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.0
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut v = vec![0; self.n()];
        for (i, &x) in self.0.iter().enumerate() {
            v[x] = i;
        }
        Permutation(v)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.0;
        (0..v.len())
            .map(|i| (i + 1..v.len()).filter(|&j| v[i] > v[j]).count())
            .sum()
    }

    /// `ℓ(s_i σ) < ℓ(σ)`: the value `i + 1` stands before `i`.
    pub fn is_left_descent(&self, i: usize) -> bool {
        let inv = self.inverse();
        inv.0[i] > inv.0[i + 1]
    }

    /// `s_i σ`: exchanges the values `i` and `i + 1`.
    fn left_mul(&self, i: usize) -> Permutation {
        Permutation(
            self.0
                .iter()
                .map(|&x| match x {
                    x if x == i => i + 1,
                    x if x == i + 1 => i,
                    x => x,
                })
                .collect(),
        )
    }

    /// The lexicographically smallest reduced word `[i_1, …, i_ℓ]` with
    /// `σ = s_{i_1} ⋯ s_{i_ℓ}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = self.clone();
        while let Some(i) = (0..self.n().saturating_sub(1)).find(|&i| cur.is_left_descent(i)) {
            word.push(i);
            cur = cur.left_mul(i);
        }
        word
    }

    /// Every reduced word, in lexicographic order.
    pub fn reduced_words(&self) -> Vec<Vec<usize>> {
        let descents: Vec<usize> = (0..self.n().saturating_sub(1)).filter(|&i| self.is_left_descent(i)).collect();
        if descents.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for i in descents {
            for mut rest in self.left_mul(i).reduced_words() {
                rest.insert(0, i);
                out.push(rest);
            }
        }
        out
    }

    /// The product of simple transpositions along a word.
    pub fn from_word(n: usize, word: &[usize]) -> Permutation {
        word.iter()
            .fold(Permutation::identity(n), |acc, &i| acc.compose(&Permutation::simple(n, i)))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}]", s.join(" "))
    }
}
