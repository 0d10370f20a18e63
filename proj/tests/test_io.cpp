#include <gtest/gtest.h>

#include <bit>
#include <filesystem>
#include <fstream>
#include <random>

#include "pballoc/error.hpp"
#include "pballoc/io/checksum.hpp"
#include "pballoc/io/csv.hpp"
#include "pballoc/io/fixture.hpp"
#include "pballoc/io/loaders.hpp"
#include "pballoc/io/manifest.hpp"
#include "pballoc/io/writers.hpp"

using namespace pballoc;
using namespace pballoc::io;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("pballoc_io_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Fixture small_fixture(std::uint64_t seed = 9) {
  FixtureSpec spec;
  spec.seed = seed;
  spec.n_regions = 3;
  spec.n_sectors = 2;
  spec.n_watersheds = 2;
  spec.n_ecoregions = 2;
  spec.pressures = {PressureProfile{}, PressureProfile{"water", "Mm3", 0.01, 0.2, 0.05}};
  return generate_fixture(spec);
}

std::string replace_cell(std::string text, std::size_t line, std::size_t col, const std::string& v) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  auto& l = lines[line - 1];
  std::size_t pos = 0;
  for (std::size_t c = 1; c < col; ++c) pos = l.find(',', pos) + 1;
  const auto end = l.find(',', pos);
  l = l.substr(0, pos) + v + (end == std::string::npos ? "" : l.substr(end));
  std::string out;
  for (const auto& s : lines) out += s + "\n";
  return out;
}

}  // namespace

TEST(Csv, QuotingCommentsAndLineEndings) {
  const std::string text = "\xEF\xBB\xBFname,note\r\n# a comment\r\n\r\n\"a,b\",\"say \"\"hi\"\"\"\r\nc,\"two\nlines\"\n";
  const auto doc = parse_csv(text, "t.csv");
  ASSERT_EQ(doc.rows.size(), 3u);
  EXPECT_EQ(doc.rows[0].cells[0], "name");
  EXPECT_EQ(doc.rows[1].cells[0], "a,b");
  EXPECT_EQ(doc.rows[1].cells[1], "say \"hi\"");
  EXPECT_EQ(doc.rows[1].line, 4u);
  EXPECT_EQ(doc.rows[2].cells[1], "two\nlines");
}

TEST(Csv, UnterminatedQuoteReportsLocation) {
  try {
    parse_csv("a,b\nc,\"open\n", "bad.csv");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.file(), "bad.csv");
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 2u);
  }
}

TEST(Csv, NumbersAreStrict) {
  EXPECT_EQ(parse_double("1.5e3", "f", 1, 1), 1500.0);
  EXPECT_EQ(parse_double(" 2 ", "f", 1, 1), 2.0);
  for (const char* bad : {"", "abc", "1.5x", "nan", "inf"}) {
    try {
      parse_double(bad, "f.csv", 7, 3);
      FAIL() << bad;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), 7u);
      EXPECT_EQ(e.column(), 3u);
      EXPECT_NE(std::string(e.what()).find("f.csv:7:3"), std::string::npos) << e.what();
    }
  }
}

TEST(Csv, ShortestRoundTrip) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 2000; ++i) {
    const double v = std::bit_cast<double>(rng() & 0x7fefffffffffffffULL);
    const auto text = format_double(v);
    EXPECT_EQ(std::bit_cast<std::uint64_t>(parse_double(text, "x", 1, 1)),
              std::bit_cast<std::uint64_t>(v))
        << text;
  }
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(csv_escape("plain"), "plain");
  EXPECT_EQ(csv_escape("a,\"b\""), "\"a,\"\"b\"\"\"");
}

TEST(Checksum, KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Loaders, SerializedFixtureRoundTripsBitForBit) {
  const auto fx = small_fixture();
  const auto z = parse_csv(serialize_z(fx.table), "z.csv");
  const auto y = parse_csv(serialize_y(fx.table), "y.csv");
  const auto x = parse_csv(serialize_x(fx.table), "x.csv");
  const MrioTable t = parse_mrio(z, y, &x);
  EXPECT_EQ(t, fx.table);

  std::map<std::string, std::string> units{{"co2", "kt CO2"}, {"water", "Mm3"}};
  const auto exts = parse_extensions(parse_csv(serialize_extensions(fx.extensions, t), "e.csv"), t, &units);
  EXPECT_EQ(exts, fx.extensions);

  const auto regions = parse_region_stats(parse_csv(serialize_region_stats(fx.regions), "r.csv"));
  ASSERT_EQ(regions.size(), fx.regions.size());
  for (std::size_t i = 0; i < regions.size(); ++i) {
    EXPECT_EQ(regions[i].entity_id, fx.regions[i].entity_id);
    EXPECT_EQ(regions[i].population, fx.regions[i].population);
    EXPECT_EQ(regions[i].value_added, fx.regions[i].value_added);
  }

  const auto sheds = parse_watersheds(parse_csv(serialize_watersheds(fx.watersheds), "w.csv"));
  ASSERT_EQ(sheds.records.size(), fx.watersheds.size());
  EXPECT_EQ(sheds.records[0].maf, fx.watersheds[0].maf);
  EXPECT_EQ(sheds.records[0].country_consumption, fx.watersheds[0].country_consumption);

  const auto ecos = parse_ecoregions(parse_csv(serialize_ecoregions(fx.ecoregions), "e.csv"));
  ASSERT_EQ(ecos.records.size(), fx.ecoregions.size());
  EXPECT_EQ(ecos.records[1].country_loss, fx.ecoregions[1].country_loss);
  EXPECT_TRUE(ecos.warnings.empty());
}

TEST(Loaders, DerivesGrossOutputWhenAbsent) {
  const auto fx = small_fixture();
  const auto t = parse_mrio(parse_csv(serialize_z(fx.table), "z.csv"),
                            parse_csv(serialize_y(fx.table), "y.csv"));
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(t.x[i], fx.table.x[i], 1e-9 * t.x[i]);
}

TEST(Loaders, BadCellNamesFileLineAndColumn) {
  const auto fx = small_fixture();
  const auto z_text = replace_cell(serialize_z(fx.table), 4, 5, "twelve");
  try {
    parse_mrio(parse_csv(z_text, "z.csv"), parse_csv(serialize_y(fx.table), "y.csv"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
    EXPECT_EQ(e.file(), "z.csv");
    EXPECT_EQ(e.line(), 4u);
    EXPECT_EQ(e.column(), 5u);
  }
}

TEST(Loaders, NegativeFlowIsInvalidInput) {
  const auto fx = small_fixture();
  const auto z_text = replace_cell(serialize_z(fx.table), 3, 3, "-1");
  try {
    parse_mrio(parse_csv(z_text, "z.csv"), parse_csv(serialize_y(fx.table), "y.csv"));
    FAIL() << "expected InvalidInput";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
  }
}

TEST(Loaders, ExtensionUnitsMustBeRegistered) {
  const auto fx = small_fixture();
  const auto doc = parse_csv(serialize_extensions(fx.extensions, fx.table), "e.csv");
  std::map<std::string, std::string> missing{{"co2", "kt CO2"}};
  EXPECT_THROW(parse_extensions(doc, fx.table, &missing), Error);
  std::map<std::string, std::string> wrong{{"co2", "kt CO2"}, {"water", "m3"}};
  EXPECT_THROW(parse_extensions(doc, fx.table, &wrong), Error);
}

TEST(Loaders, EcoregionStatusMismatchIsAWarning) {
  const std::string text =
      "unit_id,field,value\n"
      "e1,protected_frac,0.6\n"
      "e1,habitat_frac,0.1\n"
      "e1,status,imperilled\n"
      "e1,loss:CH,1.5\n";
  const auto units = parse_ecoregions(parse_csv(text, "eco.csv"));
  ASSERT_EQ(units.records.size(), 1u);
  EXPECT_EQ(units.records[0].status(), EcoregionStatus::HalfProtected);
  ASSERT_EQ(units.warnings.size(), 1u);
}

TEST(Loaders, WatershedMissingFieldIsRejected) {
  const std::string text = "unit_id,field,value\nw1,MAF,100\nw1,EWR,40\n";
  EXPECT_THROW(parse_watersheds(parse_csv(text, "ws.csv")), Error);
}

TEST(Manifest, RequiredKeysAndUnits) {
  EXPECT_THROW(parse_manifest(R"({"files": {"z": "z.csv"}})", ".", "m.json"), Error);
  EXPECT_THROW(parse_manifest(
                   R"({"files": {"z": "z.csv", "y": "y.csv", "extensions": "e.csv"},
                       "units": {"co2": "bananas"}})",
                   ".", "m.json"),
               Error);
  EXPECT_THROW(parse_manifest(
                   R"({"files": {"z": "z.csv", "y": "y.csv", "extensions": "e.csv"},
                       "checksums": {"x": "sha256:00"}})",
                   ".", "m.json"),
               Error);
  const auto m = parse_manifest(
      R"({"base_year": 2016, "files": {"z": "z.csv", "y": "y.csv", "extensions": "e.csv"},
          "units": {"co2": "kt CO2"}})",
      "/data", "m.json");
  EXPECT_EQ(m.base_year, 2016);
  EXPECT_EQ(m.path("z"), fs::path("/data/z.csv"));
  EXPECT_FALSE(m.has("x"));
}

TEST(Manifest, WrittenFixtureLoadsAndDetectsTampering) {
  const auto fx = small_fixture(31);
  const auto dir = scratch("manifest");
  const auto path = write_fixture(fx, dir, 2016);
  const auto manifest = load_manifest(path);
  const auto data = load_dataset(manifest);
  EXPECT_EQ(data.table, fx.table);
  EXPECT_EQ(data.extensions, fx.extensions);
  EXPECT_EQ(data.watersheds.records.size(), 2u);

  // Round trip of the manifest itself.
  const auto again = parse_manifest(to_json(manifest), manifest.root, "again");
  EXPECT_EQ(again.checksums, manifest.checksums);

  {
    std::ofstream out(manifest.path("regions"), std::ios::app);
    out << "ZZ,1,1,1\n";
  }
  try {
    load_dataset(manifest);
    FAIL() << "expected checksum failure";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Checksum);
    EXPECT_TRUE(e.is_validation());
  }
  fs::remove_all(dir);
}

TEST(Fixture, DeterministicAndProductive) {
  const auto a = small_fixture(4);
  const auto b = small_fixture(4);
  const auto c = small_fixture(5);
  EXPECT_EQ(a.table, b.table);
  EXPECT_EQ(a.extensions, b.extensions);
  EXPECT_NE(a.table, c.table);
  EXPECT_NO_THROW(validate(a.table));
  const auto cols = technical_coefficients(a.table).column_sums();
  for (double s : cols) {
    EXPECT_GE(s, 0.1 - 1e-12);
    EXPECT_LE(s, 0.7 + 1e-12);
  }
}

TEST(Fixture, SpecParsing) {
  const auto spec = parse_fixture_spec(
      R"({"n_regions": 4, "n_sectors": 3, "seed": 42, "trade_intensity": 0.5,
          "pressures": [{"name": "water", "unit": "Mm3", "intensity": [0.1, 0.2]}]})",
      "spec.json");
  EXPECT_EQ(spec.n_regions, 4u);
  EXPECT_EQ(spec.seed, 42u);
  ASSERT_EQ(spec.pressures.size(), 1u);
  EXPECT_EQ(spec.pressures[0].intensity_max, 0.2);
  EXPECT_THROW(parse_fixture_spec(R"({"n_regions": 0})", "s"), Error);
  EXPECT_THROW(parse_fixture_spec(R"({"trade_intensity": 2})", "s"), Error);
  EXPECT_THROW(parse_fixture_spec("{not json", "s"), Error);
}
