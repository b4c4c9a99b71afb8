import json

import pytest

from conftest import (
    DISTILLED_TAGS,
    LABELED_LEX_PAIRS,
    LABELED_SRC,
    LABELED_TAGS,
    LABELED_WANT,
    MONO_LEX_PAIRS,
    MONO_SRC,
    MONO_WANT,
)
from lexsynth.cli import main
from lexsynth.report import pipeline_summary, summary_json


def lexicon_file(tmp_path, pairs, name="lex.tsv"):
    path = tmp_path / name
    path.write_text("".join(f"{s}\t{t}\n" for s, t in pairs), encoding="utf-8")
    return path


def two_col_file(tmp_path, tokens, tags, name="data.tsv"):
    path = tmp_path / name
    path.write_text(
        "".join(f"{t}\t{l}\n" for t, l in zip(tokens.split(), tags.split())),
        encoding="utf-8")
    return path


class TestLexCommands:
    def test_stats_json(self, tmp_path, capsys):
        lex = lexicon_file(tmp_path, MONO_LEX_PAIRS)
        assert main(["lex", "stats", "--lexicon", str(lex), "--json"]) == 0
        stats = json.loads(capsys.readouterr().out)
        assert stats["entry_pairs"] == 10
        assert stats["multi_token_targets"] == 1

    def test_stats_text(self, tmp_path, capsys):
        lex = lexicon_file(tmp_path, [("a", "x")])
        assert main(["lex", "stats", "--lexicon", str(lex)]) == 0
        assert "entry_pairs\t1" in capsys.readouterr().out

    def test_merge(self, tmp_path):
        base = lexicon_file(tmp_path, [("a", "x")], "base.tsv")
        extra = lexicon_file(tmp_path, [("a", "y"), ("b", "z")], "extra.tsv")
        out = tmp_path / "merged.tsv"
        assert main(["lex", "merge", "--base", str(base), "--extra", str(extra),
                     "--out", str(out)]) == 0
        assert out.read_text(encoding="utf-8") == "a\tx\na\ty\nb\tz\n"

    def test_induce_writes_lexicon_and_alignments(self, tmp_path):
        src = tmp_path / "src.txt"
        tgt = tmp_path / "tgt.txt"
        src.write_text("the house\nthe book\na house\n" * 2, encoding="utf-8")
        tgt.write_text("das haus\ndas buch\nein haus\n" * 2, encoding="utf-8")
        out = tmp_path / "induced.tsv"
        dump = tmp_path / "alignments.txt"
        assert main(["lex", "induce", "--src", str(src), "--tgt", str(tgt),
                     "--out", str(out), "--iterations", "10",
                     "--dump-alignments", str(dump)]) == 0
        text = out.read_text(encoding="utf-8")
        assert "house\thaus" in text
        assert "# provenance: induced" in text
        assert len(dump.read_text(encoding="utf-8").splitlines()) == 6

    def test_induce_mismatched_lengths_exit_3_with_counts(self, tmp_path, capsys):
        src = tmp_path / "src.txt"
        tgt = tmp_path / "tgt.txt"
        src.write_text("a\nb\nc\n", encoding="utf-8")
        tgt.write_text("x\ny\nz\nw\n", encoding="utf-8")
        out = tmp_path / "out.tsv"
        code = main(["lex", "induce", "--src", str(src), "--tgt", str(tgt), "--out", str(out)])
        assert code == 3
        err = capsys.readouterr().err
        assert "3" in err and "4" in err
        assert not out.exists()


class TestSynthCommands:
    def test_mono_reproducible(self, tmp_path):
        lex = lexicon_file(tmp_path, MONO_LEX_PAIRS)
        corpus = tmp_path / "mono.txt"
        corpus.write_text(MONO_SRC + "\n", encoding="utf-8")
        out1, out2 = tmp_path / "o1.txt", tmp_path / "o2.txt"
        report = tmp_path / "report.json"
        args = ["synth", "mono", "--corpus", str(corpus), "--lexicon", str(lex),
                "--seed", "13", "--report", str(report)]
        assert main(args + ["--out", str(out1)]) == 0
        assert main(args + ["--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()
        assert out1.read_text(encoding="utf-8") == MONO_WANT + "\n"
        cov = json.loads(report.read_text(encoding="utf-8"))
        assert cov["replaced_tokens"] == 11
        assert cov["total_tokens"] == 21

    def test_mono_missing_seed_is_usage_error(self, tmp_path, capsys):
        lex = lexicon_file(tmp_path, MONO_LEX_PAIRS)
        corpus = tmp_path / "mono.txt"
        corpus.write_text("a\n", encoding="utf-8")
        out = tmp_path / "out.txt"
        code = main(["synth", "mono", "--corpus", str(corpus), "--lexicon", str(lex),
                     "--out", str(out)])
        assert code == 1
        assert "--seed" in capsys.readouterr().err
        assert not out.exists()

    def test_mono_limit(self, tmp_path):
        lex = lexicon_file(tmp_path, [("a", "x")])
        corpus = tmp_path / "mono.txt"
        corpus.write_text("a\n" * 10, encoding="utf-8")
        out = tmp_path / "out.txt"
        assert main(["synth", "mono", "--corpus", str(corpus), "--lexicon", str(lex),
                     "--out", str(out), "--seed", "1", "--limit", "4"]) == 0
        assert out.read_text(encoding="utf-8") == "x\n" * 4

    def test_mono_threads_identical(self, tmp_path):
        lex = lexicon_file(tmp_path, [("x", "a"), ("x", "b"), ("y", "c")])
        corpus = tmp_path / "mono.txt"
        corpus.write_text("x y x\n" * 9000, encoding="utf-8")
        outs = []
        for threads in ("1", "8"):
            out = tmp_path / f"out{threads}.txt"
            assert main(["synth", "mono", "--corpus", str(corpus), "--lexicon", str(lex),
                         "--out", str(out), "--seed", "5", "--threads", threads]) == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_labeled_two_col(self, tmp_path):
        lex = lexicon_file(tmp_path, LABELED_LEX_PAIRS)
        data = two_col_file(tmp_path, LABELED_SRC, LABELED_TAGS)
        out = tmp_path / "out.tsv"
        assert main(["synth", "labeled", "--input", str(data), "--format", "two-col",
                     "--schema", "pos", "--lexicon", str(lex), "--out", str(out),
                     "--seed", "3"]) == 0
        lines = out.read_text(encoding="utf-8").splitlines()
        assert [l.split("\t")[0] for l in lines] == LABELED_WANT.split()
        assert [l.split("\t")[1] for l in lines] == LABELED_TAGS.split()

    def test_labeled_multi_token_entries_dropped_on_load(self, tmp_path):
        # loader filters multi-token targets, so labeled synthesis stays 1:1
        lex = lexicon_file(tmp_path, [("unnecessary", "bla bzonn"), ("the", "il")])
        data = two_col_file(tmp_path, "the unnecessary end", "DET ADJ NOUN")
        out = tmp_path / "out.tsv"
        assert main(["synth", "labeled", "--input", str(data), "--format", "two-col",
                     "--schema", "pos", "--lexicon", str(lex), "--out", str(out),
                     "--seed", "3"]) == 0
        tokens = [l.split("\t")[0] for l in out.read_text(encoding="utf-8").splitlines()]
        assert tokens == ["il", "unnecessary", "end"]

    def test_labeled_conllu_replaces_form_only(self, tmp_path):
        lex = lexicon_file(tmp_path, [("week", "ġimgħa")])
        data = tmp_path / "in.conllu"
        data.write_text(
            "# sent_id = 7\n"
            "1\tthis\tthis\tDET\tDT\t_\t2\tdet\t_\t_\n"
            "2\tweek\tweek\tNOUN\tNN\t_\t0\troot\t_\tSpaceAfter=No\n\n",
            encoding="utf-8")
        out = tmp_path / "out.conllu"
        assert main(["synth", "labeled", "--input", str(data), "--format", "conllu",
                     "--schema", "pos", "--lexicon", str(lex), "--out", str(out),
                     "--seed", "2"]) == 0
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "# sent_id = 7"
        cols = lines[2].split("\t")
        assert cols[1] == "ġimgħa"            # FORM replaced
        assert cols[2] == "week"              # LEMMA untouched
        assert cols[3] == "NOUN"              # UPOS retained
        assert (cols[6], cols[9]) == ("0", "SpaceAfter=No")

    def test_bad_input_exit_2_and_no_output(self, tmp_path, capsys):
        lex = lexicon_file(tmp_path, [("a", "x")])
        bad = tmp_path / "bad.tsv"
        bad.write_text("token only line\n", encoding="utf-8")
        out = tmp_path / "out.tsv"
        code = main(["synth", "labeled", "--input", str(bad), "--format", "two-col",
                     "--schema", "pos", "--lexicon", str(lex), "--out", str(out),
                     "--seed", "1"])
        assert code == 2
        assert not out.exists()

    def test_missing_file_exit_2(self, tmp_path):
        lex = lexicon_file(tmp_path, [("a", "x")])
        code = main(["synth", "mono", "--corpus", str(tmp_path / "nope.txt"),
                     "--lexicon", str(lex), "--out", str(tmp_path / "o.txt"), "--seed", "1"])
        assert code == 2


class TestDistillCommand:
    def test_apply_with_report(self, tmp_path):
        pseudo = two_col_file(tmp_path, LABELED_WANT, LABELED_TAGS, "pseudo.tsv")
        teacher = two_col_file(tmp_path, LABELED_WANT, DISTILLED_TAGS, "teacher.tsv")
        out = tmp_path / "distilled.tsv"
        report = tmp_path / "report.json"
        assert main(["distill", "apply", "--pseudo", str(pseudo), "--teacher", str(teacher),
                     "--out", str(out), "--report", str(report)]) == 0
        tags = [l.split("\t")[1] for l in out.read_text(encoding="utf-8").splitlines()]
        assert tags == DISTILLED_TAGS.split()
        doc = json.loads(report.read_text(encoding="utf-8"))
        assert doc["changed"] == 2
        assert doc["per_label_confusion"] == {"AUX->NOUN": 1, "VERB->NOUN": 1}

    def test_token_mismatch_exit_3(self, tmp_path):
        pseudo = two_col_file(tmp_path, "a b", "X Y", "pseudo.tsv")
        teacher = two_col_file(tmp_path, "a c", "X Y", "teacher.tsv")
        out = tmp_path / "out.tsv"
        assert main(["distill", "apply", "--pseudo", str(pseudo), "--teacher", str(teacher),
                     "--out", str(out)]) == 3
        assert not out.exists()

    def test_dep_predictions_replace_heads_and_deprels(self, tmp_path):
        def conllu(path, head, deprel):
            path.write_text(
                f"1\tjien\t_\t_\t_\t_\t{head}\t{deprel}\t_\t_\n"
                "2\tmort\t_\t_\t_\t_\t0\troot\t_\t_\n\n",
                encoding="utf-8")
            return path

        pseudo = conllu(tmp_path / "pseudo.conllu", 2, "nsubj")
        teacher = conllu(tmp_path / "teacher.conllu", 0, "dislocated")
        out = tmp_path / "out.conllu"
        assert main(["distill", "apply", "--pseudo", str(pseudo), "--teacher", str(teacher),
                     "--out", str(out), "--schema", "dep"]) == 0
        first = out.read_text(encoding="utf-8").splitlines()[0].split("\t")
        assert (first[6], first[7]) == ("0", "dislocated")


class TestMixCommands:
    def test_upsample(self, tmp_path):
        gold = tmp_path / "gold.txt"
        gold.write_text("a\nb\nc\n", encoding="utf-8")
        out = tmp_path / "out.txt"
        assert main(["mix", "upsample", "--gold", str(gold), "--target-size", "7",
                     "--out", str(out), "--seed", "2"]) == 0
        assert len(out.read_text(encoding="utf-8").splitlines()) == 7

    def test_concat_shuffle_deterministic(self, tmp_path):
        a = tmp_path / "a.txt"
        b = tmp_path / "b.txt"
        a.write_text("".join(f"a{i}\n" for i in range(50)), encoding="utf-8")
        b.write_text("".join(f"b{i}\n" for i in range(50)), encoding="utf-8")
        outs = []
        for name in ("o1.txt", "o2.txt"):
            out = tmp_path / name
            assert main(["mix", "concat", "--inputs", str(a), str(b), "--out", str(out),
                         "--seed", "4", "--shuffle"]) == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]
        lines = outs[0].decode().splitlines()
        assert sorted(lines) == sorted([f"a{i}" for i in range(50)] + [f"b{i}" for i in range(50)])
        assert lines != [f"a{i}" for i in range(50)] + [f"b{i}" for i in range(50)]

    def test_joint_labeled(self, tmp_path):
        gold = two_col_file(tmp_path, "a b", "NOUN VERB", "gold.tsv")
        pseudo = two_col_file(tmp_path, "x y", "NOUN VERB", "pseudo.tsv")
        out = tmp_path / "joint.tsv"
        assert main(["mix", "joint-labeled", "--gold", str(gold), "--pseudo", str(pseudo),
                     "--out", str(out)]) == 0
        assert out.read_text(encoding="utf-8") == "a\tNOUN\nb\tVERB\n\nx\tNOUN\ny\tVERB\n"


class TestReportCommand:
    def test_pos_dist_json(self, tmp_path, capsys):
        lex = lexicon_file(tmp_path, [("house", "dar"), ("run", "ġiri")])
        ref = two_col_file(tmp_path, "house house run", "NOUN NOUN VERB", "ref.tsv")
        assert main(["report", "pos-dist", "--lexicon", str(lex), "--reference", str(ref),
                     "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["fractions"] == {"NOUN": 0.5, "VERB": 0.5}


class TestUsage:
    def test_unknown_subcommand_exit_1(self):
        assert main(["lex", "frobnicate"]) == 1

    def test_no_args_exit_1(self):
        assert main([]) == 1

    def test_version_exits_zero(self, capsys):
        assert main(["--version"]) == 0
        assert "lexsynth" in capsys.readouterr().out


def test_end_to_end_few_text_pipeline(tmp_path, capsys):
    """induce -> merge -> synth mono -> mix upsample -> mix concat, then a
    pipeline summary naming all five stages."""
    # toy parallel data (the verse corpus stand-in) and gold monolingual data
    src = tmp_path / "bible.src"
    tgt = tmp_path / "bible.tgt"
    src.write_text("the house\nthe book\na house\nthe house\nthe book\na house\n",
                   encoding="utf-8")
    tgt.write_text("das haus\ndas buch\nein haus\ndas haus\ndas buch\nein haus\n",
                   encoding="utf-8")
    gold_mono = tmp_path / "gold.txt"
    gold_mono.write_text("das haus\ndas buch\n", encoding="utf-8")
    base_lex = lexicon_file(tmp_path, [("house", "heim"), ("new", "neu")], "base.tsv")
    english = tmp_path / "english.txt"
    english.write_text("the new house\na book\n" * 3, encoding="utf-8")

    induced = tmp_path / "induced.tsv"
    merged = tmp_path / "merged.tsv"
    pseudo = tmp_path / "pseudo.txt"
    upsampled = tmp_path / "upsampled.txt"
    mixed = tmp_path / "mixed.txt"
    cov_report = tmp_path / "coverage.json"

    assert main(["lex", "induce", "--src", str(src), "--tgt", str(tgt),
                 "--out", str(induced), "--iterations", "10"]) == 0
    assert main(["lex", "merge", "--base", str(base_lex), "--extra", str(induced),
                 "--out", str(merged)]) == 0
    assert main(["synth", "mono", "--corpus", str(english), "--lexicon", str(merged),
                 "--out", str(pseudo), "--seed", "17", "--report", str(cov_report)]) == 0
    pseudo_size = len(pseudo.read_text(encoding="utf-8").splitlines())
    assert main(["mix", "upsample", "--gold", str(gold_mono),
                 "--target-size", str(pseudo_size), "--out", str(upsampled),
                 "--seed", "17"]) == 0
    assert main(["mix", "concat", "--inputs", str(pseudo), str(upsampled),
                 "--out", str(mixed), "--seed", "17", "--shuffle"]) == 0

    # base targets win order; induced entries extend coverage
    merged_text = merged.read_text(encoding="utf-8")
    assert merged_text.index("house\theim") < merged_text.index("house\thaus")
    first = pseudo.read_text(encoding="utf-8").splitlines()[0].split()
    assert first[0] == "das"          # induced entry for "the"
    assert first[1] == "neu"          # base entry for "new"
    assert first[2] in ("heim", "haus")  # merged candidates for "house"
    assert len(mixed.read_text(encoding="utf-8").splitlines()) == 2 * pseudo_size

    cov = json.loads(cov_report.read_text(encoding="utf-8"))
    summary = summary_json(pipeline_summary(
        [
            ("lex-induce", {"out": induced.name}),
            ("lex-merge", {"out": merged.name}),
            ("synth-mono", cov),
            ("mix-upsample", {"target_size": pseudo_size}),
            ("mix-concat", {"inputs": 2}),
        ],
        seeds=[17],
    ))
    for stage in ("lex-induce", "lex-merge", "synth-mono", "mix-upsample", "mix-concat"):
        assert stage in summary
