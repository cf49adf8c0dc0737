use matknap::census::{census_pairs, CensusConfig};

fn main() {
    for h in [2i64, 3, 4, 6, 8, 12, 16] {
        let mut cfg = CensusConfig::new(h);
        cfg.workers = 4;
        let r = census_pairs(&cfg);
        println!(
            "H={:2} total={:6} torsion={} dependent={:6} undecided={} {:.2}s",
            r.h, r.total_matrices, r.torsion_count, r.dependent_pairs, r.undecided_pairs, r.elapsed_seconds
        );
    }
}
