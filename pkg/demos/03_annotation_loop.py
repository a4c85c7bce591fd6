"""Drive the human-review loop over HTTP.

Generates a small dataset, starts the annotation server on a random port,
walks the review queue like a reviewer's browser would (list pending
samples, fetch one, submit a verdict), and shows the dataset absorbing the
answers.  Run with:  python demos/03_annotation_loop.py
"""

import http.client
import json
import pathlib
import tempfile
import threading

from smellgraph import annotation as an
from smellgraph import codemodel as cm
from smellgraph import dataset as ds
from smellgraph import fixture_path


def call(server, method, path, body=None):
    conn = http.client.HTTPConnection(*server.server_address)
    payload = None if body is None else json.dumps(body)
    conn.request(method, path, body=payload, headers={"Content-Type": "application/json"})
    resp = conn.getresponse()
    doc = json.loads(resp.read().decode("utf-8"))
    conn.close()
    return resp.status, doc


def main():
    root = pathlib.Path(fixture_path("corpus"))
    projects = [cm.parse_project(str(d)) for d in sorted(root.iterdir()) if d.is_dir()]
    out_dir = tempfile.mkdtemp(prefix="smellgraph-annotate-")
    ds.generate_dataset(projects, out_dir=out_dir, seed=3)

    server = an.serve(out_dir, port=0)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    print(f"annotation server on http://{server.server_address[0]}:{server.server_address[1]}")

    _, progress = call(server, "GET", "/progress")
    for smell, counts in progress.items():
        if isinstance(counts, dict):
            print(f"{smell:13s} pending={counts['pending']} "
                  f"auto-labeled={counts['immutable']}")

    _, queue = call(server, "GET", "/samples?status=pending&smell=long_method")
    sample_id = queue["samples"][0]["id"]
    _, view = call(server, "GET", f"/samples/{sample_id}")
    print(f"\nreviewing {sample_id} ({view['entity']})")
    print("checklist:")
    for q in view["checklist"]:
        print(f"  - {q}")

    # Mark the whole displayed body as worth extracting: a "smelly" verdict
    # must carry the action ranges the reviewer chose.
    first_stmt_span = min(v[0] for v in view["statement_spans"].values())
    record = {
        "annotator": "demo",
        "verdict": "smelly",
        "guideline_answers": [True, True, False, True],
        "action": [[first_stmt_span, view["span"][1] - 1]],
    }
    status, doc = call(server, "POST", f"/samples/{sample_id}/annotation", record)
    print(f"\nsubmit -> HTTP {status}; sample now labeled {doc['sample']['label']}")

    server.store.flush()
    server.shutdown()
    thread.join()
    server.server_close()

    reloaded = ds.load_dataset(out_dir)
    absorbed = next(s for s in reloaded["long_method"] if s.id == sample_id)
    print(f"after flush + reload: label={absorbed.label}, "
          f"{len(absorbed.opportunity_labels)} statements marked for extraction")
    print(f"append-only log: {pathlib.Path(out_dir, 'annotations.jsonl').read_text().strip()[:120]}...")


if __name__ == "__main__":
    main()
