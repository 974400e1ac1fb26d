//! The context tables admit concurrent readers with at-most-once
//! insertion; racing threads must agree on every cached value.

use std::sync::{Arc, Barrier};
use std::thread;

use lucas_atoms::Context;

#[test]
fn concurrent_atom_computation_is_consistent() {
    let ctx = Arc::new(Context::new());
    let reference = Context::new();
    let workers = 8;
    let barrier = Arc::new(Barrier::new(workers));

    let handles: Vec<_> = (0..workers)
        .map(|worker| {
            let ctx = Arc::clone(&ctx);
            let barrier = Arc::clone(&barrier);
            thread::spawn(move || {
                barrier.wait();
                // Overlapping, striding ranges so threads race on the
                // same slots from different directions.
                let lo = 2 + 10 * (worker as u64 % 4);
                for n in lo..lo + 60 {
                    let atom = ctx.lucas_atom(n).unwrap();
                    assert!(atom.is_nonnegative());
                    assert!(!ctx.lucas(n as i64).is_zero());
                    let _ = ctx.lucatorial(n.min(30));
                }
                for n in (2..60u64).rev() {
                    assert!(!ctx.lucas(n as i64).is_zero());
                }
            })
        })
        .collect();
    for h in handles {
        h.join().unwrap();
    }

    for n in 2..70u64 {
        assert_eq!(ctx.lucas_atom(n).unwrap(), reference.lucas_atom(n).unwrap());
        assert_eq!(ctx.lucas(n as i64), reference.lucas(n as i64));
        assert_eq!(ctx.lucatorial(n), reference.lucatorial(n));
    }
}
