from __future__ import annotations

import itertools
import json
import random
import zipfile
from io import BytesIO

import pytest

from ontoforge.access import PermissionDenied, Role
from ontoforge.changes import AddAxiom, ApplyChanges, CreateClass, EmptyEdit, SetAnnotation
from ontoforge.collab import WebhookDispatcher, ThreadStatus
from ontoforge.core import (
    Entity,
    EntityKind,
    Iri,
    Literal,
    OWL_THING,
    RDFS_LABEL,
    parse_ontology,
)
from ontoforge.criteria import LacksAnnotationOn, MatchAll, TagRule
from ontoforge.service import (
    CannotModifyOwner,
    EmptyName,
    LayoutTooLarge,
    ProjectService,
    UnknownProject,
    parse_entity_url,
)
from ontoforge.service.project import Project
from ontoforge.service.wire import revision_to_wire, tag_rule_to_wire, thread_to_wire
from oracles import as_sets, fold_state
from randgen import random_edit_script


def _ticking_clock():
    counter = itertools.count(1_700_000_000_000)
    return lambda: next(counter)


def _recording_dispatcher():
    posts: list[tuple[str, dict]] = []
    dispatcher = WebhookDispatcher(
        post=lambda url, payload: posts.append((url, json.loads(json.dumps(payload)))) or 200,
        sleep=lambda s: None,
    )
    return dispatcher, posts


@pytest.fixture()
def svc(tmp_path):
    dispatcher, posts = _recording_dispatcher()
    service = ProjectService(tmp_path / "data", clock=_ticking_clock(), dispatcher=dispatcher)
    service._test_posts = posts  # type: ignore[attr-defined]
    return service


def _populate_air(service: ProjectService, project_id: str, user: str, air_text: str):
    """Load the Airbus fixture axioms through the ordinary edit route."""
    doc = parse_ontology(air_text)
    ops = tuple(AddAxiom("ontology", axiom) for axiom in doc.axioms)
    return service.apply_edit(project_id, user, ApplyChanges(ops, "load fixture"))


def project_fingerprint(project: Project) -> dict:
    return {
        "id": project.id,
        "name": project.name,
        "owner": project.owner,
        "revisions": [revision_to_wire(r) for r in project.log.revisions],
        "head": {oid: frozenset(axs) for oid, axs in project.log.head_state.items()},
        "threads": sorted(
            (thread_to_wire(t) for t in project.threads.all_threads()),
            key=lambda t: t["id"],
        ),
        "tags": {t.id: (t.label, t.description, t.color) for t in project.tags.tags.values()},
        "rules": [tag_rule_to_wire(r) for r in project.tags.rules],
        "manual": {
            (e.kind.value, e.iri.value): sorted(ids)
            for e, ids in project.tags.all_manual().items()
        },
        "derived": {
            (e.kind.value, e.iri.value): sorted(ids)
            for e, ids in project.tags.all_derived().items()
        },
        "participants": {u: r.value for u, r in project.participants.items()},
        "webhooks": {h.id: (h.kind.value, h.url, h.enabled) for h in project.webhooks.values()},
        "layouts": dict(project.layouts),
    }


class TestProjectLifecycle:
    def test_create_project_defaults(self, svc):
        project = svc.create_project("alice", "Air")
        assert project.participants == {"alice": Role.OWNER}
        assert project.log.head_number == 0
        assert project.ontology_ids == ["ontology"]

    def test_distinct_ids(self, svc):
        assert svc.create_project("alice", "A").id != svc.create_project("alice", "B").id

    def test_empty_name_rejected(self, svc):
        with pytest.raises(EmptyName):
            svc.create_project("alice", "   ")

    def test_unknown_project(self, svc):
        with pytest.raises(UnknownProject):
            svc.get_project("p-missing")


class TestRoles:
    def test_owner_grants_commenter(self, svc):
        project = svc.create_project("alice", "Air")
        svc.set_participant_role(project.id, "alice", "carol", Role.COMMENTER)
        thread = svc.create_thread(
            project.id, "carol", Entity(EntityKind.CLASS, OWL_THING), "note",
        )
        assert thread.comments[0].author == "carol"
        with pytest.raises(PermissionDenied):
            svc.apply_edit(project.id, "carol", CreateClass("X", OWL_THING))

    def test_editor_cannot_grant_roles(self, svc):
        project = svc.create_project("alice", "Air")
        svc.set_participant_role(project.id, "alice", "ed", Role.EDITOR)
        with pytest.raises(PermissionDenied):
            svc.set_participant_role(project.id, "ed", "eve", Role.VIEWER)

    def test_owner_cannot_demote_self(self, svc):
        project = svc.create_project("alice", "Air")
        with pytest.raises(CannotModifyOwner):
            svc.set_participant_role(project.id, "alice", "alice", Role.VIEWER)

    def test_viewer_cannot_comment(self, svc):
        project = svc.create_project("alice", "Air")
        svc.set_participant_role(project.id, "alice", "vera", Role.VIEWER)
        with pytest.raises(PermissionDenied):
            svc.create_thread(project.id, "vera", Entity(EntityKind.CLASS, OWL_THING), "hi")

    def test_non_participant_cannot_read(self, svc):
        project = svc.create_project("alice", "Air")
        with pytest.raises(PermissionDenied):
            svc.search(project.id, "stranger", MatchAll())


class TestEditsThroughService:
    def test_create_class_revision(self, svc, air_text):
        project = svc.create_project("alice", "Air")
        _populate_air(svc, project.id, "alice", air_text)
        revision = svc.apply_edit(
            project.id, "alice",
            CreateClass("schema:Dataset", Iri("http://example.org/air#Aircraft")),
        )
        assert revision.number == 2
        assert revision.label == "Created Class 'schema:Dataset'"
        doc = project.merged_document()
        assert Entity(EntityKind.CLASS, Iri("https://schema.org/Dataset")) in doc.entities

    def test_empty_edit_rejected_without_side_effects(self, svc, air_text):
        project = svc.create_project("alice", "Air")
        _populate_air(svc, project.id, "alice", air_text)
        history_before = len(project.bus.history)
        log_size_before = (svc.data_dir / f"{project.id}.log").stat().st_size
        with pytest.raises(EmptyEdit):
            svc.apply_edit(project.id, "alice", ApplyChanges((), None))
        assert len(project.bus.history) == history_before
        assert (svc.data_dir / f"{project.id}.log").stat().st_size == log_size_before

    def test_every_mutation_appends_record_and_one_envelope(self, svc, air_text):
        project = svc.create_project("alice", "Air")
        log_path = svc.data_dir / f"{project.id}.log"

        def observe(mutate):
            before_events = len(project.bus.history)
            before_size = log_path.stat().st_size
            mutate()
            assert len(project.bus.history) == before_events + 1
            assert log_path.stat().st_size > before_size

        observe(lambda: _populate_air(svc, project.id, "alice", air_text))
        observe(lambda: svc.set_participant_role(project.id, "alice", "carol", Role.COMMENTER))
        observe(lambda: svc.create_thread(
            project.id, "carol",
            Entity(EntityKind.CLASS, Iri("http://example.org/air#AirbusA320")), "hm",
        ))
        thread_id = project.threads.all_threads()[0].id
        observe(lambda: svc.add_comment(thread_id, "alice", "re"))
        observe(lambda: svc.set_thread_status(thread_id, "alice", ThreadStatus.CLOSED))
        observe(lambda: svc.create_tag(project.id, "alice", "Reviewed"))
        tag_id = next(iter(project.tags.tags))
        observe(lambda: svc.set_tag_rules(
            project.id, "alice", [TagRule(tag_id, LacksAnnotationOn(RDFS_LABEL))],
        ))
        observe(lambda: svc.set_entity_tags(
            project.id, "alice",
            Entity(EntityKind.CLASS, Iri("http://example.org/air#AirbusA320")), [tag_id],
        ))
        observe(lambda: svc.add_webhook(
            project.id, "alice", "ProjectEvent", "https://sink.example/hook",
        ))
        observe(lambda: svc.set_layout(project.id, "alice", '{"tabs":[]}'))
        observe(lambda: svc.revert_revision(project.id, "alice", project.log.head_number))

    def test_idempotent_status_change_has_no_side_effects(self, svc):
        project = svc.create_project("alice", "Air")
        thread = svc.create_thread(project.id, "alice", Entity(EntityKind.CLASS, OWL_THING), "x")
        svc.set_thread_status(thread.id, "alice", ThreadStatus.CLOSED)
        events = len(project.bus.history)
        size = (svc.data_dir / f"{project.id}.log").stat().st_size
        _, changed = svc.set_thread_status(thread.id, "alice", ThreadStatus.CLOSED)
        assert not changed
        assert len(project.bus.history) == events
        assert (svc.data_dir / f"{project.id}.log").stat().st_size == size

    def test_search_hastag_sees_derived_tags(self, svc, air_text):
        from ontoforge.criteria import HasTag

        project = svc.create_project("alice", "Air")
        _populate_air(svc, project.id, "alice", air_text)
        tag = svc.create_tag(project.id, "alice", "Missing Label")
        svc.set_tag_rules(project.id, "alice", [TagRule(tag.id, LacksAnnotationOn(RDFS_LABEL))])
        hits = svc.search(project.id, "alice", HasTag(tag.id), limit=100)
        label_prop = Entity(EntityKind.ANNOTATION_PROPERTY, RDFS_LABEL)
        assert label_prop in {entity for entity, _ in hits}

    def test_tag_rules_reevaluated_after_each_revision(self, svc, air_text):
        project = svc.create_project("alice", "Air")
        _populate_air(svc, project.id, "alice", air_text)
        tag = svc.create_tag(project.id, "alice", "Missing Label")
        svc.set_tag_rules(project.id, "alice", [TagRule(tag.id, LacksAnnotationOn(RDFS_LABEL))])
        a320 = Entity(EntityKind.CLASS, Iri("http://example.org/air#AirbusA320"))
        schema_ds = Entity(EntityKind.CLASS, Iri("https://schema.org/Dataset"))
        assert tag.id not in project.tags.displayed_tags(a320)
        svc.apply_edit(
            project.id, "alice",
            CreateClass("schema:Dataset", Iri("http://example.org/air#Aircraft")),
        )
        # the freshly created class has no label and picks the tag up at once
        assert tag.id in project.tags.displayed_tags(schema_ds)


class TestNotificationsThroughService:
    def test_project_event_hook_posts_exact_envelope(self, svc, air_text):
        project = svc.create_project("alice", "Air")
        svc.add_webhook(project.id, "alice", "ProjectEvent", "https://sink.example/hook")
        svc._test_posts.clear()
        _populate_air(svc, project.id, "alice", air_text)
        assert svc.dispatcher.flush(timeout=5)
        assert len(svc._test_posts) == 1
        url, payload = svc._test_posts[0]
        assert url == "https://sink.example/hook"
        assert list(payload) == [
            "projectId", "event", "userId", "timestamp", "entity", "revisionNumber",
        ]
        assert payload["event"] == "RevisionAppended"
        assert payload["revisionNumber"] == 1
        assert payload["projectId"] == project.id

    def test_slack_hook_receives_comment_text_with_deep_link(self, svc, air_text):
        project = svc.create_project("alice", "Air")
        _populate_air(svc, project.id, "alice", air_text)
        svc.add_webhook(project.id, "alice", "SlackIncoming", "https://hooks.slack.example/T/B")
        svc.set_participant_role(project.id, "alice", "bob", Role.COMMENTER)
        svc._test_posts.clear()
        a320 = Entity(EntityKind.CLASS, Iri("http://example.org/air#AirbusA320"))
        svc.create_thread(project.id, "bob", a320, "wing geometry looks off")
        assert svc.dispatcher.flush(timeout=5)
        assert len(svc._test_posts) == 1
        _, payload = svc._test_posts[0]
        assert set(payload) == {"text"}
        assert "bob commented on A320 passenger jet: wing geometry looks off" in payload["text"]
        link = payload["text"].rsplit("\n", 1)[1]
        assert parse_entity_url(link) == (project.id, "Comments", a320)

    def test_outbox_covers_participants_except_actor(self, svc, air_text):
        project = svc.create_project("alice", "Air")
        _populate_air(svc, project.id, "alice", air_text)
        svc.set_participant_role(project.id, "alice", "bob", Role.COMMENTER)
        svc.set_participant_role(project.id, "alice", "carol", Role.VIEWER)
        a320 = Entity(EntityKind.CLASS, Iri("http://example.org/air#AirbusA320"))
        svc.create_thread(project.id, "bob", a320, "mentioning @zoe who is not a member")
        recipients = {m.recipient for m in project.outbox}
        assert recipients == {"alice", "carol"}  # not bob (actor), not zoe (non-participant)
        for message in project.outbox:
            link = [l for l in message.body.splitlines() if l.startswith("/#")][-1]
            assert parse_entity_url(link)[2] == a320


class TestArchive:
    def test_archive_name_and_contents(self, svc, air_text):
        project = svc.create_project("alice", "Air")
        _populate_air(svc, project.id, "alice", air_text)
        svc.apply_edit(
            project.id, "alice",
            SetAnnotation(
                Iri("http://example.org/air#Aircraft"), RDFS_LABEL,
                Literal("Aircraft"), Literal("Any aircraft"),
            ),
        )
        name, payload = svc.export_revision_archive(project.id, 1)
        assert name == f"project-{project.id}-r1.zip"
        with zipfile.ZipFile(BytesIO(payload)) as archive:
            assert archive.namelist() == ["ontology.ofn"]
            text = archive.read("ontology.ofn").decode("utf-8")
        doc = parse_ontology(text)
        # revision 1 still carries the original label
        assert any(
            getattr(getattr(axiom, "value", None), "lexical", None) == "Aircraft"
            for axiom in doc.axioms
        )
        state_doc = parse_ontology(air_text)
        assert frozenset(doc.axioms) == frozenset(state_doc.axioms)

    def test_archive_of_revision_zero_is_empty_ontology(self, svc):
        project = svc.create_project("alice", "Air")
        name, payload = svc.export_revision_archive(project.id, 0)
        with zipfile.ZipFile(BytesIO(payload)) as archive:
            text = archive.read("ontology.ofn").decode("utf-8")
        assert parse_ontology(text).axioms == ()


class TestLayouts:
    def test_layout_stored_verbatim(self, svc):
        project = svc.create_project("alice", "Air")
        document = '{"tabs": [{"name": "Classes",   "views": []}]}'
        svc.set_layout(project.id, "alice", document)
        assert svc.get_layout(project.id, "alice") == document
        assert svc.get_layout(project.id, "alice") is not None

    def test_layout_size_limit(self, svc):
        project = svc.create_project("alice", "Air")
        with pytest.raises(LayoutTooLarge):
            svc.set_layout(project.id, "alice", "x" * (64 * 1024 + 1))

    def test_layouts_are_per_user(self, svc):
        project = svc.create_project("alice", "Air")
        svc.set_participant_role(project.id, "alice", "bob", Role.EDITOR)
        svc.set_layout(project.id, "alice", '{"a":1}')
        svc.set_layout(project.id, "bob", '{"b":2}')
        assert svc.get_layout(project.id, "alice") == '{"a":1}'
        assert svc.get_layout(project.id, "bob") == '{"b":2}'


def _mutate_project(service: ProjectService, project_id: str, air_text: str, rng: random.Random):
    """A representative mutation mix touching every persisted record type."""
    project = service.get_project(project_id)
    _populate_air(service, project_id, "alice", air_text)
    service.set_participant_role(project_id, "alice", "bob", Role.EDITOR)
    service.set_participant_role(project_id, "alice", "carol", Role.COMMENTER)
    tag = service.create_tag(project_id, "alice", "Missing Label", "needs one", "#cc0000")
    service.set_tag_rules(project_id, "alice", [TagRule(tag.id, LacksAnnotationOn(RDFS_LABEL))])
    a320 = Entity(EntityKind.CLASS, Iri("http://example.org/air#AirbusA320"))
    service.set_entity_tags(project_id, "bob", a320, [tag.id])
    thread = service.create_thread(project_id, "carol", a320, "see schema:Dataset @bob")
    service.add_comment(thread.id, "bob", "replying with *emphasis*")
    service.set_thread_status(thread.id, "bob", ThreadStatus.CLOSED)
    service.add_webhook(project_id, "alice", "SlackIncoming", "https://hooks.example/s")
    service.set_layout(project_id, "alice", '{"tabs":["Classes"]}')
    for batch in random_edit_script(rng, ["ontology"], edits=20):
        try:
            service.apply_edit(project_id, "bob", ApplyChanges(tuple(batch), None))
        except EmptyEdit:
            pass
    service.revert_revision(project_id, "bob", project.log.head_number)


class TestPersistLoad:
    def test_fresh_project_reloads_identically(self, svc, tmp_path):
        project = svc.create_project("alice", "Air")
        reloaded_service = ProjectService(svc.data_dir, clock=_ticking_clock(),
                                          dispatcher=svc.dispatcher)
        assert project_fingerprint(reloaded_service.get_project(project.id)) == \
            project_fingerprint(project)

    def test_mutation_mix_reloads_identically(self, svc, air_text):
        rng = random.Random(2024)
        project = svc.create_project("alice", "Air")
        _mutate_project(svc, project.id, air_text, rng)
        reloaded_service = ProjectService(svc.data_dir, clock=_ticking_clock(),
                                          dispatcher=svc.dispatcher)
        reloaded = reloaded_service.get_project(project.id)
        assert project_fingerprint(reloaded) == project_fingerprint(project)

    def test_state_at_agrees_after_reload(self, svc, air_text):
        rng = random.Random(99)
        project = svc.create_project("alice", "Air")
        _mutate_project(svc, project.id, air_text, rng)
        reloaded_service = ProjectService(svc.data_dir, clock=_ticking_clock(),
                                          dispatcher=svc.dispatcher)
        reloaded = reloaded_service.get_project(project.id)
        for n in range(project.log.head_number + 1):
            oracle = fold_state(
                ["ontology"], [r.changes for r in project.log.revisions[:n]],
            )
            assert as_sets(reloaded.log.state_at(n)) == oracle

    def test_snapshot_compacts_then_reloads(self, svc, air_text):
        rng = random.Random(7)
        project = svc.create_project("alice", "Air")
        _mutate_project(svc, project.id, air_text, rng)
        svc.snapshot_project(project.id)
        svc.set_layout(project.id, "alice", '{"after":"snapshot"}')
        svc.apply_edit(
            project.id, "alice",
            CreateClass("schema:Dataset", Iri("http://example.org/air#Aircraft")),
        )
        reloaded_service = ProjectService(svc.data_dir, clock=_ticking_clock(),
                                          dispatcher=svc.dispatcher)
        reloaded = reloaded_service.get_project(project.id)
        assert project_fingerprint(reloaded) == project_fingerprint(project)

    def test_truncated_tail_loses_at_most_one_mutation(self, svc, air_text):
        project = svc.create_project("alice", "Air")
        _populate_air(svc, project.id, "alice", air_text)
        svc.create_tag(project.id, "alice", "One")
        head_before = project.log.head_number
        svc.apply_edit(
            project.id, "alice",
            CreateClass("schema:Dataset", Iri("http://example.org/air#Aircraft")),
        )
        log_path = svc.data_dir / f"{project.id}.log"
        data = log_path.read_bytes()
        log_path.write_bytes(data[:-7])  # cut into the final record
        reloaded_service = ProjectService(svc.data_dir, clock=_ticking_clock(),
                                          dispatcher=svc.dispatcher)
        reloaded = reloaded_service.get_project(project.id)
        assert reloaded.log.head_number == head_before
        assert "One" in {t.label for t in reloaded.tags.tags.values()}
