use crate::fp::Prime;

use super::echelon::{bit, flip_bit, set_bit, BitEchelon, EchelonBuilder};

/// A linear system `Σ_j a_ij x_j = b_i` over `F_p` with sparse equations.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    p: Prime,
    nvars: usize,
    equations: Vec<(Vec<(usize, u32)>, u32)>,
}

/// A solved system: one solution plus a basis of the homogeneous solutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<u32>,
    pub kernel: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Solved(Solution),
    /// `rank(A) < rank([A | b])`; both ranks are reported so the defect can
    /// be re-checked independently.
    Infeasible {
        rank: usize,
        augmented_rank: usize,
    },
}

impl SolveOutcome {
    pub fn solution(&self) -> Option<&Solution> {
        match self {
            SolveOutcome::Solved(s) => Some(s),
            SolveOutcome::Infeasible { .. } => None,
        }
    }

    pub fn into_solution(self) -> Option<Solution> {
        match self {
            SolveOutcome::Solved(s) => Some(s),
            SolveOutcome::Infeasible { .. } => None,
        }
    }
}

impl LinearSystem {
    pub fn new(p: Prime, nvars: usize) -> Self {
        LinearSystem {
            p,
            nvars,
            equations: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn equations(&self) -> &[(Vec<(usize, u32)>, u32)] {
        &self.equations
    }

    /// Adds an equation; repeated indices are summed.
    pub fn push(&mut self, coeffs: Vec<(usize, u32)>, rhs: u32) {
        let p = self.p;
        let mut coeffs: Vec<(usize, u32)> = coeffs
            .into_iter()
            .map(|(j, a)| {
                assert!(j < self.nvars, "variable index out of range");
                (j, p.reduce_u64(a as u64))
            })
            .collect();
        coeffs.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(usize, u32)> = Vec::with_capacity(coeffs.len());
        for (j, a) in coeffs {
            match merged.last_mut() {
                Some(last) if last.0 == j => last.1 = p.add(last.1, a),
                _ => merged.push((j, a)),
            }
        }
        merged.retain(|e| e.1 != 0);
        let rhs = p.reduce_u64(rhs as u64);
        if merged.is_empty() && rhs == 0 {
            return;
        }
        self.equations.push((merged, rhs));
    }

    /// Checks a candidate solution against every equation.
    pub fn satisfied_by(&self, x: &[u32]) -> bool {
        let p = self.p;
        self.equations.iter().all(|(eq, b)| {
            let s = eq
                .iter()
                .fold(0u32, |acc, &(j, a)| p.add(acc, p.mul(a, x[j])));
            s == *b
        })
    }

    pub fn solve(&self) -> SolveOutcome {
        if self.p.get() == 2 {
            self.solve_gf2()
        } else {
            self.solve_generic()
        }
    }

    fn solve_generic(&self) -> SolveOutcome {
        let p = self.p;
        let n = self.nvars;
        // The right-hand side sits in the last column, so it only becomes a
        // pivot when the system is inconsistent.
        let mut eb = EchelonBuilder::new(p, n + 1);
        let mut coeff_only = 0usize;
        for (eq, b) in &self.equations {
            let mut v = vec![0u32; n + 1];
            for &(j, a) in eq {
                v[j] = a;
            }
            v[n] = *b;
            eb.insert(v);
        }
        let (r, piv) = eb.into_rref();
        for &c in &piv {
            if c < n {
                coeff_only += 1;
            }
        }
        if piv.last() == Some(&n) {
            return SolveOutcome::Infeasible {
                rank: coeff_only,
                augmented_rank: piv.len(),
            };
        }
        let mut particular = vec![0u32; n];
        for (i, &c) in piv.iter().enumerate() {
            particular[c] = r.get(i, n);
        }
        let mut is_pivot = vec![false; n];
        for &c in &piv {
            is_pivot[c] = true;
        }
        let mut kernel = Vec::new();
        for f in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; n];
            v[f] = 1;
            for (i, &c) in piv.iter().enumerate() {
                v[c] = p.neg(r.get(i, f));
            }
            kernel.push(v);
        }
        SolveOutcome::Solved(Solution { particular, kernel })
    }

    fn solve_gf2(&self) -> SolveOutcome {
        let n = self.nvars;
        let mut eb = BitEchelon::new(n + 1);
        let words = eb.words();
        for (eq, b) in &self.equations {
            let mut v = vec![0u64; words];
            for &(j, a) in eq {
                if a & 1 == 1 {
                    flip_bit(&mut v, j);
                }
            }
            if *b & 1 == 1 {
                set_bit(&mut v, n);
            }
            eb.insert(v);
        }
        let (rows, piv) = eb.into_rref();
        if piv.last() == Some(&n) {
            return SolveOutcome::Infeasible {
                rank: piv.len() - 1,
                augmented_rank: piv.len(),
            };
        }
        let mut particular = vec![0u32; n];
        for (row, &c) in rows.iter().zip(&piv) {
            particular[c] = bit(row, n) as u32;
        }
        let mut is_pivot = vec![false; n];
        for &c in &piv {
            is_pivot[c] = true;
        }
        let mut kernel = Vec::new();
        for f in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; n];
            v[f] = 1;
            for (row, &c) in rows.iter().zip(&piv) {
                v[c] = bit(row, f) as u32;
            }
            kernel.push(v);
        }
        SolveOutcome::Solved(Solution { particular, kernel })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_and_reports_kernel() {
        let p = Prime::new(3).unwrap();
        let mut s = LinearSystem::new(p, 3);
        s.push(vec![(0, 1), (1, 1)], 2);
        s.push(vec![(1, 1), (2, 2)], 1);
        let sol = s.solve().into_solution().unwrap();
        assert!(s.satisfied_by(&sol.particular));
        assert_eq!(sol.kernel.len(), 1);
        let mut z = LinearSystem::new(p, 3);
        for (eq, _) in s.equations() {
            z.push(eq.clone(), 0);
        }
        assert!(z.satisfied_by(&sol.kernel[0]));
    }

    #[test]
    fn detects_inconsistency_gf2() {
        let p = Prime::new(2).unwrap();
        let mut s = LinearSystem::new(p, 2);
        s.push(vec![(0, 1), (1, 1)], 1);
        s.push(vec![(0, 1)], 0);
        s.push(vec![(1, 1)], 0);
        assert_eq!(
            s.solve(),
            SolveOutcome::Infeasible {
                rank: 2,
                augmented_rank: 3
            }
        );
    }

    #[test]
    fn gf2_matches_generic_path() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let p = Prime::new(2).unwrap();
        for _ in 0..30 {
            let n = rng.gen_range(1..90);
            let mut s = LinearSystem::new(p, n);
            for _ in 0..rng.gen_range(0..100) {
                let eq = (0..n)
                    .filter(|_| rng.gen_bool(0.2))
                    .map(|j| (j, 1))
                    .collect();
                s.push(eq, rng.gen_range(0..2));
            }
            let a = s.solve_gf2();
            let b = s.solve_generic();
            assert_eq!(a, b);
            if let Some(sol) = a.solution() {
                assert!(s.satisfied_by(&sol.particular));
            }
        }
    }
}
