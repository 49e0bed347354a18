//! The built-in regression corpus. Each entry names the command it is meant for and the exit
//! code that command must produce.

use crate::runner::Command;

#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub command: Command,
    pub expected_exit: i32,
    pub json: &'static str,
}

macro_rules! fixture {
    ($name:literal, $command:ident, $exit:literal) => {
        Fixture {
            name: $name,
            command: Command::$command,
            expected_exit: $exit,
            json: include_str!(concat!("../fixtures/", $name, ".json")),
        }
    };
}

pub const FIXTURES: &[Fixture] = &[
    fixture!("flagship", Verify, 0),
    fixture!("flagship_perturbed", Verify, 1),
    fixture!("gl3_bae", BaeSolve, 0),
    fixture!("gl3_float", Verify, 0),
    fixture!("manin_gl3", Verify, 0),
    fixture!("type_b", Verify, 0),
    fixture!("type_d_highest", Verify, 0),
    fixture!("type_d", Verify, 0),
    fixture!("type_c", Verify, 0),
    fixture!("sigma_a", Verify, 0),
    fixture!("masterfn_c", Verify, 0),
    fixture!("lambda_sum", ScreenCheck, 0),
    fixture!("lambda_sum_c", ScreenCheck, 0),
    fixture!("reduced_lambda_sum", Gr, 0),
    fixture!("not_a_character", ScreenCheck, 1),
    fixture!("hc_a", HcImage, 0),
    fixture!("hc_b", HcImage, 0),
    fixture!("hc_d", HcImage, 0),
    fixture!("bad_eval_points", Verify, 2),
    fixture!("root_at_site", Verify, 2),
];

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}
