//! Rich colours of pair colourings: the extremal colouring of F_2^r and random colourings.
//!
//! cargo run --release --example ramsey

use monoquad::ramsey::{eps_r, extremal_coloring, find_rich_color, FiniteGroup, PairColoring, RichMode};
use rand::SeedableRng;

fn main() -> monoquad::Result<()> {
    for r in 1..=3 {
        let ext = extremal_coloring(r)?;
        let lambdas: Vec<String> = ext.lambdas.iter().map(|l| l.to_string()).collect();
        println!("F_2^{r}: Lambda per colour class [{}]", lambdas.join(", "));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    for g in [FiniteGroup::cyclic(11), FiniteGroup::f2(3)] {
        let n = g.order();
        let c = PairColoring::random(g, (0..n).collect(), 2, &mut rng)?;
        let o = find_rich_color(&c, RichMode::Oracle)?;
        let k = find_rich_color(&c, RichMode::Constructive)?;
        println!(
            "order {n}: oracle colour {} (Lambda {}), constructive colour {} (Lambda {}, trail {:?}), eps_r^2 = {}",
            o.color,
            o.lambda,
            k.color,
            k.lambda,
            k.trail,
            eps_r(2) * eps_r(2)
        );
    }
    Ok(())
}
