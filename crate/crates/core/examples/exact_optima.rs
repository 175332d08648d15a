//! Ground truth: Hopcroft-Karp, exchange-graph intersection, brute force and
//! the exact optimal online value of tiny graphs.

use omi::exact::{brute_force_intersection, exact_intersection, max_bipartite_matching, optimal_online_value};
use omi::instances::{gen_joined_thick_z, gen_random_partition_pair, gen_thick_z};
use omi::Element;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = gen_thick_z(30, 20)?;
    let hk = max_bipartite_matching(&g)?;
    println!("Thick-Z(30, 20): {} edges, maximum matching {}", g.edge_count(), hk.opt_size);

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (a, b) = gen_random_partition_pair(14, 5, 2, &mut rng)?;
    let ground: Vec<Element> = (0..14).map(Element).collect();
    let fast = exact_intersection(&a, &b, &ground)?;
    let slow = brute_force_intersection(&[&a, &b], &ground)?;
    println!(
        "partition pair, m = 14: exchange graph {} ({} calls), brute force {} ({} calls)",
        fast.opt_size, fast.oracle_calls, slow.opt_size, slow.oracle_calls
    );

    let thick = optimal_online_value(&gen_thick_z(1, 1)?)?;
    println!("best online algorithm on Thick-Z(1): {} expected edges", thick.expected_value);
    let joined = optimal_online_value(&gen_joined_thick_z())?;
    println!(
        "best online algorithm on joined Thick-Z: {} ({} states)",
        joined.expected_value, joined.state_count
    );
    Ok(())
}
