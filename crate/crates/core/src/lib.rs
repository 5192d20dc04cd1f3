pub mod interval_lattice;
pub mod kernel;
pub mod located;
pub mod metric_locale;
pub mod numerics;
pub mod trees;
pub mod vietoris;
