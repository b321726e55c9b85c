use std::time::Instant;
use thinkit::*;

fn main() {
    let mut triples = Vec::new();
    for x in 0..4usize {
        for y in 0..4usize {
            for z in 0..4usize {
                if x != y && y != z && x != z {
                    triples.push([x, y, z]);
                }
            }
        }
    }
    let n = triples.len();
    let t0 = Instant::now();
    let mut count = 0usize;
    let mut yes = 0usize;
    let mut worst = std::time::Duration::ZERO;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let s = [triples[a], triples[b], triples[c]];
                let inst = NonBetweennessInstance::from_indices(4, &s).unwrap();
                let sat = solve_non_betweenness_bruteforce(&inst).unwrap().is_some();
                let (g, part) = reduce_non_betweenness(&inst);
                for strong in [false, true] {
                    let t1 = Instant::now();
                    let found = consistent_order_for_partition_with_limit(&g, &part, strong, 16).unwrap().is_some();
                    worst = worst.max(t1.elapsed());
                    assert_eq!(sat, found, "mismatch {s:?} strong={strong}");
                }
                count += 1;
                yes += sat as usize;
            }
        }
    }
    println!("|S|=3 all {count}: {:?}, worst {:?}, yes {yes}", t0.elapsed(), worst);
}
