use binary_magic::bench::{measure_batch_speedup, measure_scaling};
use binary_magic::MagicSpec;

#[test]
fn duplicate_sizes_have_no_exponent() {
    let r = measure_scaling(&[64, 64], 0.5, 5).unwrap();
    assert_eq!(r.entries.len(), 2);
    assert!(r.exponent.is_none());
}

#[test]
fn single_worker_count_gives_one_row() {
    let spec = MagicSpec::square(64, 32).unwrap();
    let rows = measure_batch_speedup(&spec, 8, &[1]).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].workers, 1);
}

#[test]
fn batch_speedup_with_four_workers() {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    if threads < 4 {
        eprintln!("skipped: needs 4 hardware threads, found {threads}");
        return;
    }
    let spec = MagicSpec::square(512, 256).unwrap();
    let rows = measure_batch_speedup(&spec, 64, &[1, 4]).unwrap();
    assert!(
        rows[1].matrices_per_second > rows[0].matrices_per_second,
        "{rows:?}"
    );
}
