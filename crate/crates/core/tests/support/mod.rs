pub mod macaulay;
