//! d(n) and sigma_1(n) from the depth-6 generators, with trust windows.

use qjfrac::divisor::{divisor_table, DivisorGFRequest};
use qjfrac::oracles::sigma_alpha;

fn main() -> qjfrac::Result<()> {
    for alpha in [0, 1] {
        println!("alpha = {alpha}");
        for row in divisor_table(&DivisorGFRequest::new(alpha, 6, 14))? {
            let truth = sigma_alpha(alpha, row.n as u64);
            println!("  n={:>2} value={:>4} oracle={:>4} {:?}", row.n, row.value, truth, row.window);
        }
    }
    Ok(())
}
