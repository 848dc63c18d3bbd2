//! The streaming primitives on their own.

use rand::Rng;
use streamcut::seed::rng_from_seed;
use streamcut::sketch::{CountMin, FrequencySketch, L0Sample, L0Sampler, Reservoir};

fn main() {
    let mut rng = rng_from_seed(1);

    let mut cm = CountMin::new(4, 256, &mut rng);
    let mut truth = [0i64; 50];
    for _ in 0..10_000 {
        let k = rng.gen_range(0..50usize);
        cm.update(k as u64, 1);
        truth[k] += 1;
    }
    for k in 0..5u64 {
        println!("key {k}: true {} estimate {}", truth[k as usize], cm.query(k));
    }
    println!("count-min words {}", cm.words());

    let mut l0 = L0Sampler::new(1 << 30, 0.01, 2);
    for i in 0..1000 {
        l0.update(i * 7919, 1);
    }
    for i in 0..997 {
        l0.update(i * 7919, -1);
    }
    match l0.sample() {
        L0Sample::Index(i) => println!("l0 sample {i} (support {:?})", [997 * 7919, 998 * 7919, 999 * 7919]),
        other => println!("l0 sample {other:?}"),
    }

    let mut res = Reservoir::new(5, 3);
    for x in 0..1_000_000u32 {
        res.offer(x);
    }
    println!("reservoir {:?} after {} items", res.items(), res.seen());
}
