//! Small benchmark run producing the same report the CLI prints, plus the
//! operation-count cost model fit.

use flexproofs::bench;

fn main() -> flexproofs::Result<()> {
    let fc = bench::bench_fc(&[64, 256], &[1, 8], 2, 1)?;
    print!("{}", fc.to_table());

    let vc = bench::bench_vc(&[1 << 8], None, 2, 1)?;
    print!("{}", vc.to_table());
    Ok(())
}
