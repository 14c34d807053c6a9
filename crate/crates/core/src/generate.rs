//! Seeded random instance generators.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ext::{ExtNat, Fin};
use crate::flow::min_weight_st_cut;
use crate::graph::Multigraph;
use crate::instance_file::InstanceFile;
use crate::interdiction::NfiInstance;
use crate::reductions::DksInstance;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    Nfi,
    Bmstc,
    /// Simple host graph with subgraph size `k`.
    Dks { k: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetRule {
    Absolute(u64),
    /// `floor(num / den * c(min-cost s-t cut))`.
    FractionOfMinCut { num: u64, den: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenParams {
    pub kind: GenKind,
    pub n: usize,
    pub m: usize,
    pub max_u: u64,
    pub max_c: u64,
    pub budget: BudgetRule,
    pub seed: u64,
}

fn gen_err(msg: impl Into<String>) -> Error {
    Error::Generation(msg.into())
}

/// Same parameters and seed always give the same instance.
pub fn generate(p: &GenParams) -> Result<InstanceFile> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    if p.n < 2 {
        return Err(gen_err(format!("need at least 2 vertices, got {}", p.n)));
    }
    match p.kind {
        GenKind::Dks { k } => {
            let pairs = p.n * (p.n - 1) / 2;
            if p.m > pairs {
                return Err(gen_err(format!("a simple graph on {} vertices has at most {pairs} edges", p.n)));
            }
            if k == 0 || k >= p.n {
                return Err(gen_err(format!("k must satisfy 0 < k < {}", p.n)));
            }
            let all: Vec<(usize, usize)> = (0..p.n).flat_map(|a| (a + 1..p.n).map(move |b| (a, b))).collect();
            let mut picked: Vec<usize> = sample(&mut rng, pairs, p.m).into_vec();
            picked.sort_unstable();
            let edges: Vec<_> = picked.into_iter().map(|i| all[i]).collect();
            Ok(InstanceFile::Dks(DksInstance::new(Multigraph::new(p.n, &edges)?, k)?))
        }
        GenKind::Nfi | GenKind::Bmstc => {
            if p.m > 0 && (p.max_u == 0 || p.max_c == 0) {
                return Err(gen_err("weights are drawn from 1..=max, so max_u and max_c must be positive"));
            }
            if let BudgetRule::FractionOfMinCut { den: 0, .. } = p.budget {
                return Err(gen_err("budget fraction has zero denominator"));
            }
            let s = rng.gen_range(0..p.n);
            let t = (s + rng.gen_range(1..p.n)) % p.n;
            let mut edges = Vec::with_capacity(p.m);
            for _ in 0..p.m {
                let a = rng.gen_range(0..p.n);
                let b = (a + rng.gen_range(1..p.n)) % p.n;
                edges.push((a, b, Fin(rng.gen_range(1..=p.max_u)), Fin(rng.gen_range(1..=p.max_c))));
            }
            let pairs: Vec<_> = edges.iter().map(|&(a, b, _, _)| (a, b)).collect();
            let g = Multigraph::new(p.n, &pairs)?;
            let cost: Vec<ExtNat> = edges.iter().map(|e| e.3).collect();
            let budget = match p.budget {
                BudgetRule::Absolute(b) => b,
                BudgetRule::FractionOfMinCut { num, den } => {
                    let cut = min_weight_st_cut(&g, &cost, s, t)?.weight.finite().expect("finite costs");
                    u64::try_from(u128::from(cut) * u128::from(num) / u128::from(den))
                        .map_err(|_| gen_err("budget overflows"))?
                }
            };
            let inst = NfiInstance::new(g, edges.iter().map(|e| e.2).collect(), cost, s, t, budget)?;
            Ok(match p.kind {
                GenKind::Bmstc => InstanceFile::Bmstc(inst),
                _ => InstanceFile::Nfi(inst),
            })
        }
    }
}
