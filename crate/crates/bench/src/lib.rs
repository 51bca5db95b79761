//! Inputs shared by the benchmarks.

use std::sync::Arc;

use maltcat_core::internal::check_double_groupoid;
use maltcat_core::{corpus, DoubleGroupoid};

/// The bundled double groupoid named `name`.
pub fn double_groupoid(name: &str) -> Arc<DoubleGroupoid> {
    let g = corpus::bundled()
        .doubles
        .into_iter()
        .find(|d| d.name() == name)
        .unwrap_or_else(|| panic!("no bundled double graph `{name}`"));
    Arc::new(check_double_groupoid(&g).expect("valid").expect("double groupoid"))
}
