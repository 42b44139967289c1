pub mod baselines;
