// temporary: exhaustive witness check
use octoplane::classifier::{tables::family_rows, witness::find_row_witness};
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let mut missing = vec![];
    for fam in 1..=4u8 {
        for row in family_rows(fam) {
            let t = Instant::now();
            match find_row_witness(row, 42) {
                Some(_) => println!("{:<10} ok   {:?}", row.label, t.elapsed()),
                None => { println!("{:<10} MISSING", row.label); missing.push(row.label); }
            }
        }
    }
    println!("total {:?}, missing: {:?}", t0.elapsed(), missing);
}
