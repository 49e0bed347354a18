#![allow(dead_code)]

use std::sync::Arc;

use gaudin_core::{int, BetheConfig, GaudinInstance, LieAlgebraSpec, Rat, TensorState, WeightVector};

pub fn instance(spec: LieAlgebraSpec, weights: &[&[i64]], z: &[Rat], chi: &[i64]) -> Arc<GaudinInstance> {
    let weights = weights.iter().map(|w| WeightVector::from_ints(w)).collect();
    Arc::new(GaudinInstance::new(Arc::new(spec), weights, z.to_vec(), WeightVector::from_ints(chi)).unwrap())
}

pub fn config(inst: &Arc<GaudinInstance>, roots: &[Rat], colors: &[usize]) -> BetheConfig<Rat> {
    BetheConfig::new(inst.clone(), roots.to_vec(), colors.to_vec()).unwrap()
}

/// gl_2, two sites with λ = (1, 0) at z = 0, 1.
pub fn flagship() -> Arc<GaudinInstance> {
    instance(LieAlgebraSpec::gl(2).unwrap(), &[&[1, 0], &[1, 0]], &[int(0), int(1)], &[0, 0])
}

/// Every basis tuple with at most `depth` lowering letters.
pub fn spanning_states(inst: &GaudinInstance, depth: usize) -> Vec<TensorState<Rat>> {
    let tp = inst.tensor_product().unwrap();
    tp.tuples_up_to(depth).into_iter().map(TensorState::basis).collect()
}
