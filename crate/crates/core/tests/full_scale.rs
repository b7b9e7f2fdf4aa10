//! Full-scale rate computations for the published parameter collections.
//! These pin the decisive constants to the digits the certificates assert.

use zetacert::collection::{BetaCollection, ZetaCollection};
use zetacert::floor::{stieltjes_rate, FloorMatrix};

#[test]
fn zeta35_arithmetic_rate() {
    let m = FloorMatrix::zeta(&ZetaCollection::paper_s35()).unwrap();
    let t0 = std::time::Instant::now();
    let r = stieltjes_rate(&m, 192).unwrap();
    let elapsed = t0.elapsed();
    let s = r.rate.to_decimal(8);
    println!("zeta35 C1 = {s} in {elapsed:?}, breakpoints {}, runs {}", r.breakpoint_count, r.run_count);
    assert!(s.starts_with("16779.9312"), "{s}");
    assert_eq!(r.breakpoint_count, 96_269);
    assert!(!r.negative_nu0_seen);
    assert!(r.rate.err_bound().le_pow2(-64));
}

#[test]
fn beta10_arithmetic_rate() {
    let m = FloorMatrix::beta(&BetaCollection::paper_s11()).unwrap();
    let r = stieltjes_rate(&m, 192).unwrap();
    let s = r.rate.to_decimal(8);
    println!("beta10 C1~ = {s}, breakpoints {}", r.breakpoint_count);
    assert!(s.starts_with("448.836817"), "{s}");
    assert_eq!(r.breakpoint_count, 1_829);
    assert!(!r.negative_nu0_seen);
}
