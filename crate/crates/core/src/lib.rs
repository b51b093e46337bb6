//! Dense-table finite group computation for small p-groups: z-class
//! partitions, conjugate type vectors, centralizer structure and isoclinism,
//! with executable checks of the classical statements about groups attaining
//! the maximal number of z-classes.

pub mod arith;
pub mod catalog;
pub mod cayley;
pub mod constructions;
pub mod group;
pub mod isoclinism;
pub mod report;
pub mod spec;
pub mod subgroup;
pub mod theorems;
pub mod zclass;

pub use group::{ElementId, GroupError, GroupTable, Validation, DEFAULT_ORDER_CAP};
pub use spec::{parse_spec, BuildOptions, GroupSpec};
pub use subgroup::{QuotientGroup, SubgroupSet};
pub use zclass::{z_class_count, z_class_partition, ZClassPartition};
