pub mod connections;
pub mod expansional;
pub mod flat_bundles;
pub mod free_graded;
pub mod hopf_characters;
pub mod sample;
pub mod scalar_series;
