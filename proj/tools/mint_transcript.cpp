// Regenerates the committed replay transcript for the hermetic end-to-end
// run: synthetic dataset -> modeling crew -> MRM crew (intact and with one
// documentation section removed), all recorded from the scripted planner.
//
//   mint_transcript <output-transcript.jsonl> [work-dir]

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "crewml/cli/synth.hpp"
#include "crewml/crews/mrm.hpp"
#include "crewml/crews/runner.hpp"
#include "crewml/crews/tools.hpp"
#include "crewml/llm/gateway.hpp"
#include "crewml/util/text.hpp"

namespace fs = std::filesystem;
using namespace crewml;

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: mint_transcript <out.jsonl> [work-dir]\n");
    return 2;
  }
  std::string transcript_path = argv[1];
  fs::path work = argc > 2 ? fs::path(argv[2])
                           : fs::temp_directory_path() / "crewml_mint";
  fs::remove_all(work);
  fs::create_directories(work);

  try {
    // the dataset criterion 10 runs on: n=5000, majority fraction 0.78
    tab::Table data =
        cli::generate_synthetic_dataset(5000, 6, 2, 0.78, 3.0, 7);
    std::string csv = (work / "data.csv").string();
    tab::write_csv(data, csv);

    crews::RunOptions options;
    options.mode = crews::RunMode::Record;
    options.record_scripted = true;
    options.seed = 42;

    std::string model_dir = (work / "model_run").string();
    options.transcript_path = (work / "t_model.jsonl").string();
    crews::run_recipe(crews::synthetic_recipe(csv, model_dir), options);

    std::string mrm_dir = (work / "mrm_run").string();
    options.transcript_path = (work / "t_mrm.jsonl").string();
    crews::run_mrm(model_dir, "", mrm_dir, options);

    // tampered variant: one pipeline section removed from the documentation
    std::string tampered_dir = (work / "model_run_tampered").string();
    fs::copy(model_dir, tampered_dir, fs::copy_options::recursive);
    std::string doc_path = tampered_dir + "/" + crews::kDocumentationTxt;
    write_text_file(doc_path,
                    crews::remove_documentation_section(
                        read_text_file(doc_path), "Hyperparameter Tuning"));
    std::string mrm_tampered_dir = (work / "mrm_run_tampered").string();
    options.transcript_path = (work / "t_mrm_tampered.jsonl").string();
    crews::run_mrm(tampered_dir, "", mrm_tampered_dir, options);

    // merge the three phases into one transcript
    llm::Transcript merged;
    for (const char* name : {"t_model.jsonl", "t_mrm.jsonl", "t_mrm_tampered.jsonl"}) {
      llm::Transcript part = llm::Transcript::load((work / name).string());
      part.for_each([&](const std::string& fp, const llm::ChatResponse& r) {
        merged.add(fp, r);
      });
    }
    merged.save(transcript_path);
    std::cout << "wrote " << merged.size() << " responses to "
              << transcript_path << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "mint_transcript failed: %s\n", e.what());
    return 2;
  }
}
