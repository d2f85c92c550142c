#include <cmath>

#include "doctest.h"
#include "loopdnp/constants.hpp"
#include "loopdnp/waveform_io.hpp"
#include "oracles.hpp"

using namespace loopdnp;

TEST_SUITE("waveform-io") {

TEST_CASE("corpus integrity: counts, caps, and pinned hashes") {
  struct Pin {
    const char* name;
    int pulses;
    std::uint64_t fnv1a;
  };
  // Hashes pin the exact bundled text; regenerate deliberately or not at all.
  const Pin pins[] = {{"LOOP-1", 24, 0x9cd83ad50cd0c4e0ull},
                      {"LOOP-2", 30, 0x3a928dbfe231597full},
                      {"LOOP-3", 24, 0xb5186bfbea1bccc6ull},
                      {"LOOP-4", 25, 0x22b950185e59cf36ull},
                      {"LOOP-5", 30, 0xb6c7a89ec57e0242ull}};
  REQUIRE(corpus().size() == 5);
  for (const Pin& pin : pins) {
    const CorpusEntry* entry = corpus_find(pin.name);
    REQUIRE(entry != nullptr);
    const Waveform w = parse_waveform(entry->text);
    CHECK(static_cast<int>(w.size()) == pin.pulses);
    CHECK(rad_to_mhz(w.max_amplitude()) == doctest::Approx(32.0).epsilon(1e-12));
    CHECK(testing::fnv1a64(entry->text) == pin.fnv1a);
  }
}

TEST_CASE("corpus first row of LOOP-1") {
  const Waveform w = corpus_waveform("LOOP-1");
  CHECK(rad_to_mhz(w.pulses()[0].amplitude) == doctest::Approx(30.594).epsilon(1e-12));
  CHECK(w.pulses()[0].phase == doctest::Approx(-2.026).epsilon(1e-12));
  CHECK(w.pulses()[0].duration == doctest::Approx(5e-9).epsilon(1e-15));
}

TEST_CASE("round trip is the identity on every corpus file") {
  for (const CorpusEntry& entry : corpus()) {
    const WaveformFile file = parse_waveform_file(entry.text);
    CHECK(write_waveform_file(file) == entry.text);
    // parse -> waveform -> canonical file -> text also reproduces the text
    const Waveform w = to_waveform(file);
    const WaveformFile regenerated = to_waveform_file(w, file.metadata);
    CHECK(write_waveform_file(regenerated) == entry.text);
  }
}

TEST_CASE("validate_waveform on corpus entries") {
  const ValidationReport r2 = validate_waveform(corpus_waveform("LOOP-2"),
                                                mhz_to_rad(32.0));
  CHECK(r2.n_pulses == 30);
  CHECK(s_to_ns(r2.tau_m) == doctest::Approx(150.0).epsilon(1e-12));
  CHECK(rad_to_mhz(r2.modulation_freq) == doctest::Approx(20.0 / 3.0).epsilon(1e-12));
  CHECK(r2.cap_ok);
  CHECK(r2.phases_wrapped);
  CHECK(r2.violations.empty());

  const ValidationReport r4 = validate_waveform(corpus_waveform("LOOP-4"),
                                                mhz_to_rad(32.0));
  CHECK(r4.n_pulses == 25);
  CHECK(rad_to_mhz(r4.modulation_freq) == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("validate_waveform reports violations") {
  const Waveform loud = Waveform::uniform("loud", {mhz_to_rad(33.0)}, {4.0}, 5e-9);
  const ValidationReport r = validate_waveform(loud, mhz_to_rad(32.0));
  CHECK(!r.cap_ok);
  CHECK(!r.phases_wrapped);
  REQUIRE(r.violations.size() == 2);
  CHECK(r.violations[0].find("exceeds cap") != std::string::npos);
  const std::string text = r.to_text();
  CHECK(text.find("cap_ok:          no") != std::string::npos);
}

TEST_CASE("parse errors name the offending line") {
  const std::string good =
      "# format_version=1\n# name=w\n# dt_ns=5\nindex,amp_MHz,phase_rad\n1,10.000,0.000\n";
  CHECK(parse_waveform(good).size() == 1);

  auto line_of = [](const std::string& text) {
    try {
      parse_waveform(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };

  // missing columns
  CHECK(line_of("# format_version=1\n# name=w\n# dt_ns=5\nindex,amp_MHz,phase_rad\n1,10.000\n") == 5);
  // non-contiguous indices
  CHECK(line_of("# format_version=1\n# name=w\n# dt_ns=5\nindex,amp_MHz,phase_rad\n1,1.0,0.0\n3,1.0,0.0\n") == 6);
  // negative amplitude
  CHECK(line_of("# format_version=1\n# name=w\n# dt_ns=5\nindex,amp_MHz,phase_rad\n1,-1.0,0.0\n") == 5);
  // dt <= 0
  CHECK(line_of("# format_version=1\n# name=w\n# dt_ns=0\nindex,amp_MHz,phase_rad\n1,1.0,0.0\n") == 3);
  // empty pulse list
  CHECK_THROWS_AS(
      parse_waveform("# format_version=1\n# name=w\n# dt_ns=5\nindex,amp_MHz,phase_rad\n"),
      ParseError);
  // missing header entirely
  CHECK_THROWS_AS(parse_waveform("1,1.0,0.0\n"), ParseError);
}

TEST_CASE("unknown metadata keys round-trip in order") {
  const std::string text =
      "# format_version=1\n# name=w\n# dt_ns=5\n# zeta=1\n# alpha=2\n"
      "index,amp_MHz,phase_rad\n1,10.000,0.000\n";
  const WaveformFile file = parse_waveform_file(text);
  REQUIRE(file.metadata.size() == 2);
  CHECK(file.metadata[0].first == "zeta");
  CHECK(file.metadata[1].first == "alpha");
  CHECK(write_waveform_file(file) == text);
}

TEST_CASE("load_waveform corpus scheme and unknown names") {
  CHECK(load_waveform("corpus:LOOP-3").size() == 24);
  CHECK_THROWS_AS(load_waveform("corpus:LOOP-9"), std::runtime_error);
  CHECK_THROWS_AS(load_waveform("/nonexistent/path.csv"), std::runtime_error);
}

TEST_CASE("to_waveform_file wraps phases and formats three decimals") {
  const Waveform w =
      Waveform::uniform("w", {mhz_to_rad(1.23456)}, {two_pi + 0.25}, 5e-9);
  const WaveformFile file = to_waveform_file(w);
  CHECK(file.rows[0].amp_mhz == "1.235");
  CHECK(file.rows[0].phase_rad == "0.250");
  CHECK(file.dt_ns == "5");
}

}  // TEST_SUITE
