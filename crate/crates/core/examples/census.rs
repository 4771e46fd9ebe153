//! Monochromatic quadruple counts of a colouring of F_p, total and partial.
//!
//! cargo run --example census

use monoquad::counting::{census_quadruples, census_quadruples_partial, Coloring};
use monoquad::FieldCtx;

fn main() -> monoquad::Result<()> {
    let ctx = FieldCtx::new(11)?;
    // quadratic residues against non-residues, 0 with the residues
    let colors: Vec<usize> = (0..11u64).map(|x| if x == 0 || (1..11u64).any(|y| y * y % 11 == x) { 0 } else { 1 }).collect();
    let rep = census_quadruples(&ctx, &Coloring::total(2, colors.clone())?)?;
    println!("residue colouring of F_11: per colour {:?}, total {}", rep.per_color, rep.total);

    let partial: Vec<Option<usize>> = colors.iter().enumerate().map(|(x, &c)| (x % 3 != 0).then_some(c)).collect();
    let rep = census_quadruples_partial(&ctx, &Coloring::partial(2, partial)?)?;
    println!("with every third element uncoloured: per colour {:?}, total {}", rep.per_color, rep.total);
    Ok(())
}
