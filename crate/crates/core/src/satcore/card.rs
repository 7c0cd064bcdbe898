use super::{Lit, Solver, Var};

/// Sequential counter (upper direction only) over `inputs` with `width`
/// outputs: output `j` is forced true whenever at least `j + 1` inputs are
/// true. Assuming `¬output(k)` enforces "at most `k` inputs true".
pub struct SeqCounter {
    outputs: Vec<Var>,
}

impl SeqCounter {
    pub fn build(solver: &mut Solver, inputs: &[Lit], width: usize) -> SeqCounter {
        let width = width.max(1);
        let mut prev: Vec<Var> = Vec::new();
        for (i, &x) in inputs.iter().enumerate() {
            let cur: Vec<Var> = (0..width).map(|_| solver.new_var()).collect();
            solver.add_clause(&[!x, Lit::pos(cur[0])]);
            if i > 0 {
                for j in 0..width {
                    solver.add_clause(&[Lit::neg(prev[j]), Lit::pos(cur[j])]);
                    if j > 0 {
                        solver.add_clause(&[!x, Lit::neg(prev[j - 1]), Lit::pos(cur[j])]);
                    }
                }
            }
            prev = cur;
        }
        SeqCounter { outputs: prev }
    }

    /// Assumption literal for "at most `k` inputs true", if expressible.
    pub fn at_most(&self, k: usize) -> Option<Lit> {
        self.outputs.get(k).map(|&v| Lit::neg(v))
    }

    pub fn width(&self) -> usize {
        self.outputs.len()
    }
}
