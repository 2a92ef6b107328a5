use std::time::Instant;
use susychain::chain::ChainModel;
use susychain::spectrum::degeneracy_match;

fn main() {
    let t0 = Instant::now();
    let m2 = ChainModel::by_name("sln1:2", None).unwrap();
    for l in [3usize, 4, 5] {
        let t = Instant::now();
        let rep = degeneracy_match(&m2, l).unwrap();
        println!(
            "sln1:2 L={l}: {:?}, matches {}, unmatched_low {:?}, min_shared {:?}",
            t.elapsed(),
            rep.matches.len(),
            rep.unmatched_low,
            rep.min_shared
        );
    }
    let m3 = ChainModel::by_name("sln1:3", None).unwrap();
    let t = Instant::now();
    let rep = degeneracy_match(&m3, 3).unwrap();
    println!(
        "sln1:3 L=3: {:?}, matches {}, unmatched_low {:?}, min_shared {:?}",
        t.elapsed(),
        rep.matches.len(),
        rep.unmatched_low,
        rep.min_shared
    );
    let heis = ChainModel::by_name("heisenberg", None).unwrap();
    let t = Instant::now();
    let rep = degeneracy_match(&heis, 4).unwrap();
    println!(
        "heisenberg L=4: {:?}, matches {}, unmatched_low {:?}",
        t.elapsed(),
        rep.matches.len(),
        rep.unmatched_low
    );
    println!("total: {:?}", t0.elapsed());
}
