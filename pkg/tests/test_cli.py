import json

import pytest

from src.app import main
from src.config import Config
from src.models import parse_document, strip_attributes, structural_equal
from tests.conftest import BOOKS_SCHEMA

PRICE = '/books/book/price'


@pytest.fixture
def books_file(tmp_path, books_path):
    target = tmp_path / 'books.xml'
    target.write_bytes(books_path.read_bytes())
    return target


def run_json(capsys, argv):
    capsys.readouterr()
    assert main(argv) == 0
    return json.loads(capsys.readouterr().out)


def stripped(path, attr='address'):
    tree = parse_document(path.read_bytes())
    return strip_attributes(tree.root, {attr})


def test_annotate(books_file, tmp_path):
    out = tmp_path / 'books.ann.xml'
    assert main(['annotate', '--in', str(books_file), '--out', str(out)]) == 0
    assert b'<publisher address="1.4/6">McGraw Hill</publisher>' in out.read_bytes()
    schema = json.loads((tmp_path / 'books.ann.schema.json').read_text())
    assert schema['tags'] == list(BOOKS_SCHEMA)


def test_annotate_custom_attribute(books_file, tmp_path):
    out = tmp_path / 'labeled.xml'
    schema_out = tmp_path / 'tags.json'
    assert main(['annotate', '--in', str(books_file), '--out', str(out), '--attr', 'pos',
                 '--schema-out', str(schema_out)]) == 0
    assert b'<books pos="/0">' in out.read_bytes()
    assert json.loads(schema_out.read_text())['attr_name'] == 'pos'


@pytest.mark.parametrize("flags", [
    ['--model', 'horizontal', '--predicate', f"{PRICE} <= 200", '--predicate', f"{PRICE} > 200"],
    ['--model', 'range', '--parts', '2'],
    ['--model', 'range', '--parts', '2', '--path', PRICE],
    ['--model', 'vertical', '--path', '/books/book/TableOfContent'],
    ['--model', 'hybrid', '--path', '/books/book/TableOfContent',
     '--predicate', f"{PRICE} <= 200", '--predicate', f"{PRICE} > 200"],
    ['--model', 'size', '--threshold', '900'],
    ['--model', 'simplex', '--max-size', '400', '--max-width', '4', '--max-depth', '3'],
])
def test_fragment_then_reassemble(books_file, tmp_path, flags):
    frags = tmp_path / 'frags'
    assert main(['fragment', '--in', str(books_file), '--out', str(frags)] + flags) == 0
    manifest = json.loads((frags / Config.MANIFEST_NAME).read_text())
    files = [entry['file'] for entry in manifest['fragments']]
    assert files and all((frags / name).is_file() for name in files)
    assert all(name.startswith('books.') for name in files)

    rebuilt = tmp_path / 'rebuilt.xml'
    assert main(['reassemble', '--in', str(frags), '--out', str(rebuilt), '--strip']) == 0
    original = parse_document(books_file.read_bytes())
    assert structural_equal(parse_document(rebuilt.read_bytes()), original)


def test_fragment_annotated_input_keeps_labels(books_file, tmp_path):
    annotated = tmp_path / 'books.ann.xml'
    main(['annotate', '--in', str(books_file), '--out', str(annotated)])
    frags = tmp_path / 'frags'
    assert main(['fragment', '--in', str(annotated), '--out', str(frags),
                 '--model', 'vertical', '--path', '/books/book/TableOfContent']) == 0
    rebuilt = tmp_path / 'rebuilt.xml'
    assert main(['reassemble', '--in', str(frags), '--out', str(rebuilt)]) == 0
    assert structural_equal(parse_document(rebuilt.read_bytes()),
                            parse_document(annotated.read_bytes()))


def test_allocate_and_query(books_file, tmp_path, capsys):
    frags = tmp_path / 'frags'
    main(['fragment', '--in', str(books_file), '--out', str(frags), '--model', 'horizontal',
          '--predicate', f"{PRICE} <= 200", '--predicate', f"{PRICE} > 200"])
    assert main(['allocate', '--in', str(frags), '--nodes', '2']) == 0
    assert (Config.get_node_dir(frags, 0) / 'books.h1.xml').is_file()
    assert (Config.get_node_dir(frags, 1) / 'books.h2.xml').is_file()
    assert not list(frags.glob('books.*.xml'))
    assert json.loads((frags / Config.ALLOCATION_NAME).read_text())['node_count'] == 2

    result = run_json(capsys, ['query', '--in', str(frags), '--predicate', f"{PRICE} = 98"])
    assert result == {'nodes': [0], 'matches': ['1/1'], 'scanned': 2}

    report = run_json(capsys, ['query', '--in', str(frags), '--predicate', f"{PRICE} = 98",
                               '--predicate', f"{PRICE} = 229"])
    assert [r['nodes'] for r in report['results']] == [[0], [1]]
    assert report['skew'] == pytest.approx(1 / 3)


def test_allocate_to_separate_directory(books_file, tmp_path):
    frags, cluster = tmp_path / 'frags', tmp_path / 'cluster'
    main(['fragment', '--in', str(books_file), '--out', str(frags), '--model', 'range',
          '--parts', '3'])
    assert main(['allocate', '--in', str(frags), '--out', str(cluster), '--nodes', '3',
                 '--strategy', 'range']) == 0
    for node in range(3):
        assert (Config.get_node_dir(cluster, node) / f"books.r{node + 1}.xml").is_file()
    left = sorted(p.name for p in frags.glob('books.*.xml'))
    assert left == [f"books.r{i}.xml" for i in (1, 2, 3)]
    rebuilt = tmp_path / 'rebuilt.xml'
    assert main(['reassemble', '--in', str(cluster), '--out', str(rebuilt), '--strip']) == 0
    assert structural_equal(parse_document(rebuilt.read_bytes()),
                            parse_document(books_file.read_bytes()))


def test_reallocation_moves_files_between_nodes(books_file, tmp_path):
    frags = tmp_path / 'frags'
    main(['fragment', '--in', str(books_file), '--out', str(frags), '--model', 'range',
          '--parts', '3'])
    assert main(['allocate', '--in', str(frags), '--nodes', '3', '--strategy', 'range']) == 0
    assert main(['allocate', '--in', str(frags), '--nodes', '1']) == 0
    placed = sorted(p.relative_to(frags).as_posix() for p in frags.rglob('*.xml'))
    assert placed == [f"nodes/node-0/books.r{i}.xml" for i in (1, 2, 3)]
    rebuilt = tmp_path / 'rebuilt.xml'
    assert main(['reassemble', '--in', str(frags), '--out', str(rebuilt), '--strip']) == 0
    assert structural_equal(parse_document(rebuilt.read_bytes()),
                            parse_document(books_file.read_bytes()))


def test_query_without_allocation_uses_one_node(books_file, tmp_path, capsys):
    frags = tmp_path / 'frags'
    main(['fragment', '--in', str(books_file), '--out', str(frags), '--model', 'size',
          '--threshold', '900'])
    result = run_json(capsys, ['query', '--in', str(frags),
                               '--predicate', '/books/book/year = 2013'])
    assert result['nodes'] == [0]
    assert result['matches'] == ['2/1', '3/1']


def test_stats(books_file, tmp_path, capsys):
    frags = tmp_path / 'frags'
    main(['fragment', '--in', str(books_file), '--out', str(frags), '--model', 'vertical',
          '--path', '/books/book/TableOfContent'])
    report = run_json(capsys, ['stats', '--in', str(frags)])
    assert [shape['fragment_id'] for shape in report['fragments']] == ['v0', 'v1']
    assert sum(report['histogram'].values()) == 2
    assert report['min'] <= report['mean'] <= report['max']
    assert 'workload' not in report

    workload = tmp_path / 'workload.json'
    workload.write_text(json.dumps([{'id': 'q1', 'elements': ['title', 'price'], 'freq': 10},
                                    {'id': 'q2', 'elements': ['price', 'year'], 'freq': 5}]))
    report = run_json(capsys, ['stats', '--in', str(frags), '--workload', str(workload),
                               '--groups', '2'])
    groups = report['workload']['groups']
    assert len(groups) == 2
    assert ['title', 'price'] in [[t for t in g if t in ('title', 'price')] for g in groups]
    assert report['workload']['cost'] > 0


def test_generate_is_deterministic(tmp_path):
    first, second, other = tmp_path / 'a.xml', tmp_path / 'b.xml', tmp_path / 'c.xml'
    assert main(['generate', '--records', '25', '--seed', '3', '--out', str(first)]) == 0
    main(['generate', '--records', '25', '--seed', '3', '--out', str(second)])
    main(['generate', '--records', '25', '--seed', '4', '--out', str(other)])
    assert first.read_bytes() == second.read_bytes()
    assert first.read_bytes() != other.read_bytes()
    tree = parse_document(first.read_bytes())
    assert len(tree.root.children) == 25


def test_fillers_round_trip(books_file, tmp_path):
    encoded = tmp_path / 'encoded'
    cuts = ['--cut', '1.8/10', '--cut', '2.8/10', '--cut', '3.8/10']
    assert main(['fillers', '--in', str(books_file), '--out', str(encoded)] + cuts) == 0
    assert len(list(Config.get_fillers_dir(encoded).glob('F*.xml'))) == 4

    decoded = tmp_path / 'decoded.xml'
    assert main(['fillers', '--decode', '--in', str(encoded), '--out', str(decoded)]) == 0
    assert structural_equal(stripped(decoded), parse_document(books_file.read_bytes()).root)


@pytest.mark.parametrize("argv", [
    [],
    ['frobnicate'],
    ['annotate', '--out', 'x.xml'],
    ['fragment', '--in', 'books.xml', '--out', 'frags'],
    ['fragment', '--in', 'books.xml', '--out', 'frags', '--model', 'horizontal'],
    ['fragment', '--in', 'books.xml', '--out', 'frags', '--model', 'range'],
    ['fragment', '--in', 'books.xml', '--out', 'frags', '--model', 'size', '--threshold', '0'],
    ['fragment', '--in', 'books.xml', '--out', 'frags', '--model', 'simplex',
     '--max-size', '10', '--max-width', '0', '--max-depth', '2'],
    ['fragment', '--in', 'books.xml', '--out', 'frags', '--model', 'vertical'],
    ['allocate', '--in', 'frags'],
    ['allocate', '--in', 'frags', '--nodes', '0'],
    ['query', '--in', 'frags'],
    ['generate', '--records', '5'],
    ['generate', '--records', '5', '--out', 'g.xml', '--price-min', '9', '--price-max', '1'],
    ['annotate', '--in', 'books.xml', '--out', 'x.xml', '--bogus'],
])
def test_usage_errors(tmp_path, monkeypatch, argv):
    monkeypatch.chdir(tmp_path)
    assert main(argv) == 1
    assert not (tmp_path / 'frags').exists()


def test_data_errors(tmp_path):
    bad = tmp_path / 'bad.xml'
    bad.write_bytes(b'<books><book></books>')
    assert main(['annotate', '--in', str(bad), '--out', str(tmp_path / 'out.xml')]) == 2
    assert not (tmp_path / 'out.xml').exists()
    assert main(['annotate', '--in', str(tmp_path / 'absent.xml'),
                 '--out', str(tmp_path / 'out.xml')]) == 2
    assert main(['query', '--in', str(tmp_path), '--predicate', f"{PRICE} = 1"]) == 2


def test_bad_predicate_is_a_data_error(books_file, tmp_path):
    frags = tmp_path / 'frags'
    assert main(['fragment', '--in', str(books_file), '--out', str(frags), '--model',
                 'horizontal', '--predicate', f"{PRICE} <="]) == 2
    assert not frags.exists()


def test_missing_fragment_fails_reassembly(books_file, tmp_path):
    frags = tmp_path / 'frags'
    main(['fragment', '--in', str(books_file), '--out', str(frags), '--model', 'vertical',
          '--path', '/books/book/TableOfContent'])
    (frags / 'books.v1.xml').unlink()
    rebuilt = tmp_path / 'rebuilt.xml'
    assert main(['reassemble', '--in', str(frags), '--out', str(rebuilt)]) == 2
    assert not rebuilt.exists()


def test_overly_deep_document_is_a_data_error(tmp_path):
    deep = tmp_path / 'deep.xml'
    deep.write_bytes(b'<a>' * 600 + b'</a>' * 600)
    assert main(['annotate', '--in', str(deep), '--out', str(tmp_path / 'out.xml')]) == 2
    assert not (tmp_path / 'out.xml').exists()
