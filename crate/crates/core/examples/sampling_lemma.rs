//! The sampling bound: exact expectation over every tape, a Monte-Carlo
//! estimate, and one traced run of the deferred-decision algorithm.

use num::ToPrimitive;
use omi::online::RandomnessTape;
use omi::sampling::{
    exact_probability, random_setting, samp_alg_k, verify_sampling_lemma_k, Expectation, ScanOrder, SettingKind,
    TraceStep,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    // draw until the hidden set is big enough to be interesting
    let s = loop {
        let s = random_setting(&mut rng, SettingKind::Mixed, 2, 18, 10);
        if s.i_tilde.len() >= 3 {
            break s;
        }
    };
    println!("|T| = {}, |Ĩ| = {}, sampled matroid {}", s.t.len(), s.i_tilde.len(), s.branch);
    let ms = s.refs();
    for p in ["1/10", "36/100", "9/10"] {
        let p = exact_probability(p).expect("valid");
        for (name, order) in &s.orders[..2] {
            let exact = verify_sampling_lemma_k(&ms, s.branch, &s.t, order, &s.i_tilde, &p, Expectation::Exact)?;
            let how = Expectation::MonteCarlo { samples: 2000, seed: 5 };
            let mc = verify_sampling_lemma_k(&ms, s.branch, &s.t, order, &s.i_tilde, &p, how)?;
            println!(
                "p = {p:<6} order {name:<5} E|N| = {:.4} (Monte-Carlo {:.4}) ≥ {:.4}: {}",
                exact.lhs.as_f64(),
                mc.lhs.as_f64(),
                exact.rhs.to_f64().unwrap_or(f64::NAN),
                exact.holds
            );
        }
    }

    let others: Vec<_> = ms.iter().enumerate().filter(|&(j, _)| j != s.branch).map(|(_, m)| *m).collect();
    let tape = RandomnessTape::seeded(4, 0.5);
    let out = samp_alg_k(ms[s.branch], &others, &s.t, &tape, &s.orders[0].1, ScanOrder::Ascending)?;
    println!("\ntraced run, |N'| = {}:", out.n.len());
    for step in out.trace.iter().take(8) {
        match step {
            TraceStep::Rejected { e } => println!("  {e:?}: rejected"),
            TraceStep::Scanned { e, reads, .. } if reads.is_empty() => {
                println!("  {e:?}: circuit already decided, skipped")
            }
            TraceStep::Scanned { e, reads, added, .. } => {
                println!("  {e:?}: read {} tape bits, added = {added}", reads.len())
            }
        }
    }
    Ok(())
}
