//! Streams the complete nondominated frontier of a small bi-objective
//! assignment instance, printing each vector the moment it is generated.
//!
//! ```bash
//! cargo run --example frontier
//! ```

use moip::cli::{generate_instance, GeneratorSpec, Shape};
use moip::enumerate::{enumerate_nondominated, EnumerationRequest, Flow};
use moip::ip::SolveCounter;
use moip::model::{ExtInt, ObjectiveVector, Point};

fn main() {
    let spec = GeneratorSpec {
        shape: Shape::Assignment { size: 4 },
        cost_min: 1,
        cost_max: 20,
        seed: 11,
        k: 2,
    };
    let (inst, _) = generate_instance(&spec, None).expect("valid spec");

    let mut counter = SolveCounter::new();
    let req = EnumerationRequest {
        inst: &inst,
        active: vec![0, 1],
        obj_caps: vec![ExtInt::PosInf; 2],
        consumer: |vector: &ObjectiveVector, _point: &Point| {
            println!("generated {vector}");
            Flow::Continue
        },
    };
    let outcome = enumerate_nondominated(req, &mut counter).expect("enumeration succeeds");
    println!(
        "frontier complete: {} vectors, {} IP solves",
        outcome.vectors.len(),
        outcome.ip_solves
    );
}
