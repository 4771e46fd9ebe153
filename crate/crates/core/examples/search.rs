//! Backtracking for colourings of {1, ..., N} with no monochromatic {x, y, x+y, xy}.
//!
//! cargo run --release --example search

use monoquad::search::{interval_backtrack, interval_frontier, SearchOutcome};

fn main() -> monoquad::Result<()> {
    for distinct in [false, true] {
        let fr = interval_frontier(2, distinct, 60, 2_000_000)?;
        let stop = match fr.outcomes.last() {
            Some((n, o)) if o.is_unsat() => format!("N = {n} has no valid colouring"),
            Some((n, o)) if o.is_sat() => format!("reached the limit N = {n}"),
            Some((n, _)) => format!("budget exhausted at N = {n}"),
            None => String::new(),
        };
        println!("r = 2, x != y required: {distinct}: last certificate N = {:?}, {stop}", fr.last_sat);
    }
    match interval_backtrack(100, 3, false, 10_000_000)? {
        SearchOutcome::Sat { coloring, nodes } => {
            let s: String = coloring.iter().map(|c| char::from(b'0' + c)).collect();
            println!("r = 3, N = 100 after {nodes} nodes: {s}");
        }
        other => println!("r = 3, N = 100: {other:?}"),
    }
    Ok(())
}
