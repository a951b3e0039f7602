#!/usr/bin/env python3
"""Regenerates the desk-scale fixture knowledge base under fixtures/.

Run from the workspace root:  python3 scripts/gen_fixtures.py
Output is deterministic.
"""
import json
import math
import os
import random

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
KB = os.path.join(ROOT, "fixtures", "kb")
EVAL = os.path.join(ROOT, "fixtures", "eval")

CLASS_NS = "http://w3id.org/asdkb/ontology/class/"
PROP_NS = "http://w3id.org/asdkb/ontology/property/"
INST_NS = "http://w3id.org/asdkb/instance/"
RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
UMLS = "http://linkedlifedata.com/resource/umls/id/"
ADAR = "http://purl.bioontology.org/ontology/ADAR/"

# ---------------------------------------------------------------- ontology
# (local name, zh, en, parents, comment, [(relation, external iri)])
CLASSES = [
    ("Disease", "疾病", "Disease", [], "Disorders relevant to autism spectrum disorder.", [("equivalentClass", UMLS + "C0012634")]),
    ("PervasiveDevelopmentalDisorder", "广泛性发育障碍", "Pervasive Developmental Disorder", ["Disease"], None, [("equivalentClass", UMLS + "C0524528")]),
    ("AutismSpectrumDisorder", "孤独症谱系障碍", "Autism Spectrum Disorder", ["PervasiveDevelopmentalDisorder"], "Neurodevelopmental condition affecting social communication and behaviour.", [("equivalentClass", UMLS + "C1510586")]),
    ("AspergersSyndrome", "阿斯伯格综合症", "Asperger's Syndrome", ["AutismSpectrumDisorder"], None, [("equivalentClass", UMLS + "C0236792")]),
    ("ChildhoodAutism", "儿童孤独症", "Childhood Autism", ["AutismSpectrumDisorder"], None, [("equivalentClass", UMLS + "C0004352")]),
    ("AtypicalAutism", "非典型孤独症", "Atypical Autism", ["AutismSpectrumDisorder"], None, []),
    ("HighFunctioningAutism", "高功能孤独症", "High-Functioning Autism", ["AutismSpectrumDisorder"], None, []),
    ("RegressiveAutism", "退行性孤独症", "Regressive Autism", ["AutismSpectrumDisorder"], None, []),
    ("RettSyndrome", "雷特综合征", "Rett Syndrome", ["PervasiveDevelopmentalDisorder"], None, [("equivalentClass", UMLS + "C0035372")]),
    ("ChildhoodDisintegrativeDisorder", "童年瓦解性障碍", "Childhood Disintegrative Disorder", ["PervasiveDevelopmentalDisorder"], None, []),
    ("OtherPervasiveDevelopmentalDisorder", "其他广泛性发育障碍", "Other Pervasive Developmental Disorder", ["PervasiveDevelopmentalDisorder"], None, []),
    ("PervasiveDevelopmentalDisorderUnspecified", "未特定的广泛性发育障碍", "Pervasive Developmental Disorder, Unspecified", ["PervasiveDevelopmentalDisorder"], None, []),
    ("OveractiveDisorderWithStereotypedMovements", "伴有精神发育迟滞和刻板动作的多动障碍", "Overactive Disorder Associated with Mental Retardation and Stereotyped Movements", ["PervasiveDevelopmentalDisorder"], None, []),
    ("DevelopmentalLanguageDisorder", "发育性语言障碍", "Developmental Language Disorder", ["Disease"], None, []),
    ("Symptom", "症状", "Symptom", [], "Observable behaviours or signs of a disease.", [("equivalentClass", UMLS + "C1457887")]),
    ("ImpairmentsInSocialInteraction", "社交互动障碍", "Impairments in Social Interaction", ["Symptom"], None, [("subClassOf", ADAR + "SocialInteractionSymptom")]),
    ("RestrictiveRepetitiveStereotypedBehaviors", "局限、重复和刻板的行为", "Restrictive, Repetitive and Stereotyped Behaviors", ["Symptom"], None, []),
    ("OtherSymptoms", "其他症状", "Other Symptoms", ["Symptom"], None, []),
    ("DiagnosticStandard", "诊断标准", "Diagnostic Standard", [], "Criteria summarising a class of symptoms.", []),
    ("StandardOfSocialInteraction", "社交互动标准", "Standard of Impairments in Social Interaction", ["DiagnosticStandard"], None, []),
    ("StandardOfRepetitiveBehavior", "重复行为标准", "Standard of Repetitive Behavior", ["DiagnosticStandard"], None, []),
    ("ScreeningTool", "筛查工具", "Screening Tool", [], "A screening scale filled in by parents, teachers or clinicians.", [("subClassOf", UMLS + "C0220908")]),
    ("ScreeningQuestion", "筛查问题", "Screening Question", [], None, []),
    ("Option", "选项", "Option", [], "An answer option of a screening question.", []),
    ("Physician", "医生", "Physician", [], None, [("equivalentClass", UMLS + "C0031831")]),
    ("Hospital", "医院", "Hospital", [], None, [("equivalentClass", UMLS + "C0019994")]),
    ("AdministrativeDivision", "行政区划", "Administrative Division", [], None, []),
    ("Province", "省", "Province", ["AdministrativeDivision"], None, []),
    ("City", "市", "City", ["AdministrativeDivision"], None, []),
    ("District", "区", "District", ["AdministrativeDivision"], None, []),
    ("InterventionMethod", "干预方法", "Intervention Method", [], None, []),
    ("EvidenceBasedPractice", "循证实践", "Evidence-Based Practice", ["InterventionMethod"], None, []),
]

# (name, zh, en, domains, range)
DATATYPE_PROPS = [
    ("SCTID", "SNOMED CT编号", "SCTID", ["Disease"], "string"),
    ("ICD10Code", "ICD-10编码", "ICD-10 Code", ["Disease"], "string"),
    ("Synonym", "同义词", "Synonym", ["Disease"], "string"),
    ("Introduction", "简介", "Introduction", ["Disease", "Symptom", "ScreeningTool", "InterventionMethod"], "string"),
    ("PatientGroups", "患者人群", "Patient Groups", ["Disease"], "string"),
    ("Pathogeny", "病因", "Pathogeny", ["Disease"], "string"),
    ("Author", "作者", "Author", ["ScreeningTool"], "string"),
    ("User", "填写者", "User", ["ScreeningTool"], "string"),
    ("MinAge", "最小适用年龄", "Minimum Age", ["ScreeningTool"], "float"),
    ("MaxAge", "最大适用年龄", "Maximum Age", ["ScreeningTool"], "float"),
    ("Time", "耗时", "Time", ["ScreeningTool"], "integer"),
    ("Rule", "规则", "Rule", ["ScreeningTool"], "string"),
    ("ScreeningBoundary", "筛查界限", "Screening Boundary", ["ScreeningTool"], "float"),
    ("ScoringPolarity", "计分方向", "Scoring Polarity", ["ScreeningTool"], "string"),
    ("Language", "语言", "Language", ["ScreeningTool"], "string"),
    ("Score", "分值", "Score", ["Option"], "float"),
    ("Name", "名称", "Name", ["Physician", "Hospital", "AdministrativeDivision"], "string"),
    ("Title", "职称", "Title", ["Physician"], "string"),
    ("Specialty", "擅长", "Specialty", ["Physician"], "string"),
    ("HospitalDepartment", "科室", "Hospital Department", ["Physician"], "string"),
    ("Address", "地址", "Address", ["Hospital"], "string"),
    ("ContactDetails", "联系方式", "Contact Details", ["Hospital"], "string"),
    ("HospitalLevel", "医院等级", "Hospital Level", ["Hospital"], "string"),
    ("Population", "人口", "Population", ["AdministrativeDivision"], "integer"),
    ("GeoCoordinates", "经纬度", "Geo Coordinates", ["Hospital", "AdministrativeDivision"], "string"),
]

OBJECT_PROPS = [
    ("hasSymptom", "有症状", "has symptom", ["Disease"], "Symptom"),
    ("symptomOf", "是症状于", "symptom of", ["Symptom"], "Disease"),
    ("hasDiagnosticStandard", "有诊断标准", "has diagnostic standard", ["Disease"], "DiagnosticStandard"),
    ("relatedSymptom", "相关症状", "related symptom", ["DiagnosticStandard"], "Symptom"),
    ("hasScreeningTool", "有筛查工具", "has screening tool", ["Disease"], "ScreeningTool"),
    ("hasQuestion", "有问题", "has question", ["ScreeningTool"], "ScreeningQuestion"),
    ("questionOf", "问题属于", "question of", ["ScreeningQuestion"], "ScreeningTool"),
    ("hasOption", "有选项", "has option", ["ScreeningQuestion"], "Option"),
    ("optionOf", "选项属于", "option of", ["Option"], "ScreeningQuestion"),
    ("correspondingSymptom", "对应症状", "corresponding symptom", ["ScreeningQuestion"], "Symptom"),
    ("matchStandard", "匹配标准", "match standard", ["Option"], "DiagnosticStandard"),
    ("workAt", "工作于", "work at", ["Physician"], "Hospital"),
    ("hasPhysician", "有医生", "has physician", ["Hospital"], "Physician"),
    ("locateAt", "位于", "locate at", ["Hospital", "AdministrativeDivision"], "AdministrativeDivision"),
    ("hasIntervention", "有干预方法", "has intervention", ["Disease"], "InterventionMethod"),
    ("specializeIn", "专长于", "specialize in", ["Physician"], "Disease"),
]


def write_ontology():
    lines = [
        "# Ontology of the autism spectrum disorder knowledge base.",
        "# One declaration per line; fields are separated by ' | '.",
        "",
    ]
    for name, zh, en, parents, comment, ext in CLASSES:
        parts = [f"CLASS <{CLASS_NS}{name}>", f"zh={zh}", f"en={en}",
                 "parents=" + ",".join(f"<{CLASS_NS}{p}>" for p in parents)]
        if comment:
            parts.append(f"comment={comment}")
        eq = [i for r, i in ext if r == "equivalentClass"]
        sub = [i for r, i in ext if r == "subClassOf"]
        if eq:
            parts.append("equivalentClass=" + ",".join(f"<{i}>" for i in eq))
        if sub:
            parts.append("externalSubClassOf=" + ",".join(f"<{i}>" for i in sub))
        lines.append(" | ".join(parts))
    lines.append("")
    for name, zh, en, domains, rng in DATATYPE_PROPS:
        lines.append(" | ".join([
            f"PROP <{PROP_NS}{name}>", "kind=datatype", f"zh={zh}", f"en={en}",
            "domain=" + ",".join(f"<{CLASS_NS}{d}>" for d in domains), f"range={rng}"]))
    lines.append("")
    for name, zh, en, domains, rng in OBJECT_PROPS:
        lines.append(" | ".join([
            f"PROP <{PROP_NS}{name}>", "kind=object", f"zh={zh}", f"en={en}",
            "domain=" + ",".join(f"<{CLASS_NS}{d}>" for d in domains), f"range=<{CLASS_NS}{rng}>"]))
    with open(os.path.join(KB, "ontology.txt"), "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------- symptoms
SOCIAL = [
    ("不会进行对视", "without eye contact"),
    ("很少微笑", "rarely smile"),
    ("叫名字没有反应", "no response to own name"),
    ("不会用手指指物", "does not point at objects"),
    ("缺乏共同注意", "lack of joint attention"),
    ("不喜欢与人拥抱", "dislikes being hugged"),
    ("难以与同龄人交朋友", "difficulty making friends with peers"),
    ("喜欢独自玩耍", "prefers to play alone"),
    ("不理解他人的情绪", "does not understand the emotions of others"),
    ("缺乏面部表情", "lack of facial expressions"),
    ("不会使用手势", "does not use gestures"),
    ("不会模仿他人动作", "does not imitate the actions of others"),
    ("对他人缺乏兴趣", "lack of interest in other people"),
    ("不会分享快乐", "does not share enjoyment"),
    ("语言发育迟缓", "delayed language development"),
    ("不会主动说话", "does not initiate speech"),
    ("重复别人的话", "repeats the words of others"),
    ("说话语调异常", "abnormal speech intonation"),
    ("不能进行对话", "cannot hold a conversation"),
    ("代词使用混乱", "confuses pronouns"),
    ("不会玩假装游戏", "no pretend play"),
    ("听不懂简单指令", "does not understand simple instructions"),
    ("对亲人没有依恋", "no attachment to family members"),
    ("不会挥手再见", "does not wave goodbye"),
    ("回避与人身体接触", "avoids physical contact with others"),
]
REPETITIVE = [
    ("反复摇晃身体", "repetitive body rocking"),
    ("反复拍手", "repetitive hand flapping"),
    ("原地转圈", "spinning in circles"),
    ("坚持固定的程序", "insists on fixed routines"),
    ("对变化极度不适", "extreme distress at small changes"),
    ("排列玩具", "lines up toys"),
    ("过度关注物体的局部", "unusual fixation on parts of objects"),
    ("兴趣强烈而狭窄", "intense and narrow interests"),
    ("反复开关门", "repeatedly opens and closes doors"),
    ("使用刻板的语言", "uses stereotyped language"),
    ("踮脚走路", "toe walking"),
    ("反复观看同一视频", "repeatedly watches the same video"),
    ("只吃固定的食物", "eats only a few fixed foods"),
    ("对旋转物体着迷", "fascinated by spinning objects"),
    ("重复相同的动作", "repeats the same movements"),
    ("坚持固定的行走路线", "insists on fixed walking routes"),
    ("反复嗅闻物品", "repeatedly sniffs objects"),
    ("对声音过度敏感", "oversensitive to sounds"),
    ("对疼痛反应迟钝", "insensitive to pain"),
    ("用特殊方式看东西", "looks at things in unusual ways"),
]
OTHER = [
    ("睡眠障碍", "sleep disturbance"),
    ("情绪暴躁", "temper tantrums"),
    ("攻击行为", "aggressive behaviour"),
    ("自伤行为", "self-injurious behaviour"),
    ("多动", "hyperactivity"),
    ("注意力不集中", "inattention"),
    ("进食问题", "feeding problems"),
    ("癫痫发作", "seizures"),
    ("智力发育落后", "delayed intellectual development"),
    ("运动协调困难", "motor coordination difficulties"),
    ("过度焦虑", "excessive anxiety"),
    ("恐惧反应异常", "abnormal fear responses"),
    ("胃肠道问题", "gastrointestinal problems"),
    ("已获得技能倒退", "loss of previously acquired skills"),
    ("不明原因的哭闹", "unexplained crying"),
    ("大小便训练困难", "toilet training difficulties"),
    ("缺乏危险意识", "lack of danger awareness"),
    ("过度依赖照顾者", "excessive dependence on caregivers"),
    ("精细动作落后", "delayed fine motor skills"),
    ("语言能力倒退", "regression of language abilities"),
]
SYMPTOM_CLASSES = (["ImpairmentsInSocialInteraction"] * len(SOCIAL)
                   + ["RestrictiveRepetitiveStereotypedBehaviors"] * len(REPETITIVE)
                   + ["OtherSymptoms"] * len(OTHER))
SYMPTOMS = SOCIAL + REPETITIVE + OTHER
assert len(SYMPTOMS) == 65


def symptom_records():
    out = []
    for i, ((zh, en), cls) in enumerate(zip(SYMPTOMS, SYMPTOM_CLASSES), start=1):
        out.append({
            "id": f"symptom{i}", "class": cls, "Label": zh, "LabelEn": en,
            "Introduction": f"儿童表现为{zh}。",
            "IntroductionEn": f"The child shows the following behaviour: {en}.",
        })
    return out


# ---------------------------------------------------------------- standards
# (class, text, probe question or None)
STANDARDS = [
    ("StandardOfSocialInteraction", "眼神接触、手势、面部表情、身体定位或言语语调等方面的缺乏、减少或不合规的使用",
     "孩子在眼神接触、手势、面部表情方面是否缺乏或减少"),
    ("StandardOfSocialInteraction", "社交情感互动缺陷，如异常的社交接触和不能正常地来回对话", "孩子是否存在社交情感互动缺陷"),
    ("StandardOfSocialInteraction", "分享兴趣、情绪或情感的减少", "孩子是否很少与人分享兴趣或情感"),
    ("StandardOfSocialInteraction", "不能启动社交互动或对社交互动无回应", "孩子是否不能启动社交互动"),
    ("StandardOfSocialInteraction", "整合语言和非语言交流的能力差", "孩子整合语言和非语言交流的能力是否差"),
    ("StandardOfSocialInteraction", "理解和使用手势的缺陷", "孩子是否在理解和使用手势方面有缺陷"),
    ("StandardOfSocialInteraction", "面部表情和非语言交流的完全缺乏", "孩子是否完全缺乏面部表情和非语言交流"),
    ("StandardOfSocialInteraction", "发展、维持和理解人际关系的缺陷", "孩子是否难以发展和维持人际关系"),
    ("StandardOfSocialInteraction", "难以调整自己的行为以适应各种社交情境", "孩子是否难以调整行为以适应社交情境"),
    ("StandardOfSocialInteraction", "难以分享想象的游戏或交朋友", "孩子是否难以分享想象的游戏或交朋友"),
    ("StandardOfSocialInteraction", "对同伴缺乏兴趣", "孩子是否对同伴缺乏兴趣"),
    ("StandardOfSocialInteraction", "对他人的呼唤缺乏回应", "孩子是否对他人的呼唤缺乏回应"),
    ("StandardOfSocialInteraction", "缺乏共同注意能力", "孩子是否缺乏共同注意能力"),
    ("StandardOfSocialInteraction", "缺乏社交性微笑", "孩子是否缺乏社交性微笑"),
    ("StandardOfSocialInteraction", "不能理解他人的情绪和意图", "孩子是否不能理解他人的意图"),
    ("StandardOfSocialInteraction", "语言发育明显落后且不用手势弥补", "孩子语言发育是否明显落后"),
    ("StandardOfSocialInteraction", "语言交流中缺乏主动性", "孩子在语言交流中是否缺乏主动性"),
    ("StandardOfSocialInteraction", "不能发起或维持与他人的对话", "孩子是否不能维持与他人的对话"),
    ("StandardOfSocialInteraction", "缺乏自发的假装游戏或社会性模仿游戏", "孩子是否缺乏假装游戏或模仿游戏"),
    ("StandardOfSocialInteraction", "与父母之间缺乏依恋关系", "孩子与父母之间是否缺乏依恋关系"),
    ("StandardOfSocialInteraction", "回避与他人的身体接触", "孩子是否回避与他人的身体接触"),
    ("StandardOfSocialInteraction", "对社交线索的理解困难", "孩子是否难以理解社交线索"),
    ("StandardOfRepetitiveBehavior", "刻板或重复的躯体运动、使用物体或言语", "孩子是否有刻板或重复的躯体运动"),
    ("StandardOfRepetitiveBehavior", "简单的刻板运动，如摇晃身体或拍手", "孩子是否有摇晃身体或拍手等刻板运动"),
    ("StandardOfRepetitiveBehavior", "排列玩具或翻转物体", "孩子是否经常排列玩具或翻转物体"),
    ("StandardOfRepetitiveBehavior", "模仿言语或特殊短语的重复使用", "孩子是否重复使用特殊短语"),
    ("StandardOfRepetitiveBehavior", "坚持相同性，缺乏弹性地坚持常规", "孩子是否缺乏弹性地坚持常规"),
    ("StandardOfRepetitiveBehavior", "对微小的变化极端痛苦", "孩子是否对微小的变化极端痛苦"),
    ("StandardOfRepetitiveBehavior", "难以从一种活动过渡到另一种活动", "孩子是否难以从一种活动过渡到另一种活动"),
    ("StandardOfRepetitiveBehavior", "僵化的思维模式和问候仪式", "孩子是否有僵化的思维模式"),
    ("StandardOfRepetitiveBehavior", "每天需要走相同的路线或吃同样的食物", "孩子是否每天需要走相同的路线"),
    ("StandardOfRepetitiveBehavior", "高度受限的固定的兴趣，其强度和专注度方面是异常的", "孩子是否有高度受限的固定的兴趣"),
    ("StandardOfRepetitiveBehavior", "对不寻常物体的强烈依恋或先占观念", "孩子是否对不寻常物体有强烈依恋"),
    ("StandardOfRepetitiveBehavior", "过度局限或持续的兴趣", "孩子的兴趣是否过度局限或持续"),
    ("StandardOfRepetitiveBehavior", "对感觉输入的过度反应或反应不足", "孩子对感觉输入是否过度反应或反应不足"),
    ("StandardOfRepetitiveBehavior", "对疼痛或温度的感觉明显淡漠", "孩子对疼痛或温度的感觉是否明显淡漠"),
    ("StandardOfRepetitiveBehavior", "对特定的声音或质地的不良反应", "孩子是否对特定的声音或质地有不良反应"),
    ("StandardOfRepetitiveBehavior", "对物体过度地嗅或触摸", "孩子是否对物体过度地嗅或触摸"),
    ("StandardOfRepetitiveBehavior", "对光线或运动的视觉着迷", "孩子是否对光线或运动视觉着迷"),
    ("StandardOfRepetitiveBehavior", "踮脚走路等异常的运动方式", "孩子是否有踮脚走路等异常的运动方式"),
    ("StandardOfRepetitiveBehavior", "反复旋转物体或自身旋转", "孩子是否反复旋转物体"),
    ("StandardOfSocialInteraction", "症状在发育早期出现", None),
    ("StandardOfRepetitiveBehavior", "症状导致社交、职业或其他重要功能方面的显著损害", None),
]
assert len(STANDARDS) == 43

# standard index (0-based) -> related symptom ids (1-based)
STANDARD_SYMPTOMS = {0: [1, 2, 10, 11], 1: [13, 19], 2: [14, 2], 3: [16, 3], 5: [11, 4], 6: [10],
                     10: [13, 7], 11: [3], 12: [5], 13: [2], 14: [9], 15: [15], 18: [21, 12],
                     19: [23], 20: [6, 25], 22: [26, 27, 40], 23: [26, 27], 24: [31],
                     25: [17, 35], 26: [29, 41], 27: [30], 30: [41, 38], 31: [33], 34: [43, 44],
                     35: [44], 37: [42], 38: [39], 39: [36], 40: [28, 39]}


def standard_records():
    out = []
    for i, (cls, text, _) in enumerate(STANDARDS, start=1):
        rec = {"id": f"standard{i}", "class": cls, "Label": text}
        rel = STANDARD_SYMPTOMS.get(i - 1)
        if rel:
            rec["relatedSymptom"] = [f"symptom{s}" for s in rel]
        out.append(rec)
    return out


# ---------------------------------------------------------------- screening tools
# id, zh label, en label, language, users, age range, time, polarity, option scheme, author
TOOLS = [
    ("ABC", "孤独症行为量表", "ABC", "en", ["parent", "teacher"], (1.5, 35), 15, "ascending", "weighted", "Krug, Arick, Almond"),
    ("CARS2", "儿童孤独症评定量表第二版", "CARS2", "en", ["clinician"], (2, 99), 30, "ascending", "severity", "Schopler et al."),
    ("MCHAT", "改良版幼儿孤独症筛查量表", "M-CHAT", "en", ["parent"], (1.33, 2.5), 10, "ascending", "yesno", "Robins, Fein, Barton"),
    ("SCQ", "社交沟通问卷", "SCQ", "en", ["parent"], (4, 40), 10, "ascending", "yesno", "Rutter, Bailey, Lord"),
    ("AQ", "孤独症谱系商数问卷", "AQ", "en", ["parent"], (16, 99), 15, "ascending", "agree", "Baron-Cohen et al."),
    ("ASSQ", "孤独症谱系筛查问卷", "ASSQ", "en", ["parent", "teacher"], (7, 16), 10, "ascending", "trinary", "Ehlers, Gillberg, Wing"),
    ("CAST", "儿童孤独症谱系测试", "CAST", "en", ["parent"], (4, 11), 10, "ascending", "yesno", "Scott, Baron-Cohen et al."),
    ("GARS3", "吉列姆孤独症评定量表第三版", "GARS-3", "en", ["parent", "teacher"], (3, 22), 10, "ascending", "frequency", "Gilliam"),
    ("SRS2", "社交反应量表第二版", "SRS-2", "en", ["parent", "teacher"], (2.5, 99), 20, "ascending", "frequency", "Constantino, Gruber"),
    ("STAT", "两岁幼儿孤独症筛查工具", "STAT", "en", ["clinician"], (2, 3), 20, "ascending", "passfail", "Stone, Ousley"),
    ("ITC", "婴幼儿发育检核表", "ITC", "en", ["parent"], (0.5, 2), 10, "descending", "development", "Wetherby, Prizant"),
    ("PEDS", "家长发育状况评估", "PEDS", "en", ["parent"], (0, 8), 5, "ascending", "yesno", "Glascoe"),
    ("ASQ3", "年龄与发育进程问卷第三版", "ASQ-3", "en", ["parent"], (0.08, 5.5), 15, "descending", "development", "Squires, Bricker"),
    ("CSBS", "沟通与象征行为量表", "CSBS-DP", "en", ["parent"], (0.5, 2), 10, "descending", "development", "Wetherby, Prizant"),
    ("QCHAT", "幼儿孤独症量化检核表", "Q-CHAT", "en", ["parent"], (1.5, 2), 10, "ascending", "frequency", "Allison, Baron-Cohen et al."),
    ("CHAT23", "中文版幼儿孤独症筛查量表", "CHAT-23", "zh", ["parent"], (1.5, 3), 10, "ascending", "yesno", "香港中文大学"),
    ("CLANCY", "克氏孤独症行为量表", "Clancy", "zh", ["parent", "teacher"], (2, 15), 10, "ascending", "trinary", "Clancy"),
    ("CABS", "儿童孤独症早期筛查量表", "CABS", "zh", ["parent"], (1, 4), 10, "ascending", "yesno", "邹小兵"),
    ("PCABC", "孤独症儿童行为检核表", "PCABC", "zh", ["teacher"], (3, 12), 15, "ascending", "frequency", "孤独症康复研究组"),
    ("GESELL", "儿童神经心理发育量表", "GDS", "zh", ["clinician"], (0, 6), 30, "descending", "development", "北京儿童保健所"),
]
assert len(TOOLS) == 20

OPTION_SCHEMES = {
    "yesno": [("否", "No", 0), ("是", "Yes", 1)],
    "weighted": [("无", "Absent", 0), ("有", "Present", 3)],
    "severity": [("正常", "Normal", 1), ("轻度异常", "Mildly abnormal", 2), ("中度异常", "Moderately abnormal", 3), ("重度异常", "Severely abnormal", 4)],
    "agree": [("完全不同意", "Definitely disagree", 0), ("有点不同意", "Slightly disagree", 0.5), ("有点同意", "Slightly agree", 0.5), ("完全同意", "Definitely agree", 1)],
    "trinary": [("否", "No", 0), ("有时", "Somewhat", 1), ("是", "Yes", 2)],
    "frequency": [("从不", "Never", 0), ("偶尔", "Sometimes", 1), ("经常", "Often", 2), ("总是", "Always", 3)],
    "passfail": [("通过", "Pass", 0), ("未通过", "Fail", 1)],
    "development": [("否", "Not yet", 0), ("有时", "Sometimes", 5), ("是", "Yes", 10)],
}

DEVELOPMENT_POSITIVE = [
    ("孩子会看着你的眼睛", "Your child looks you in the eye"),
    ("孩子会对你微笑", "Your child smiles at you"),
    ("叫孩子名字时孩子会回头", "Your child turns when you call the name"),
    ("孩子会用手指指向想要的东西", "Your child points to things wanted"),
    ("孩子会挥手再见", "Your child waves goodbye"),
    ("孩子会模仿你的动作", "Your child imitates your actions"),
    ("孩子会和你一起看同一个东西", "Your child looks at the same thing with you"),
    ("孩子会说简单的词语", "Your child says simple words"),
]


def tool_records():
    tools, questions, options = [], [], []
    symptom_cursor = 0
    probe_cursor = 0
    probes = [i for i, s in enumerate(STANDARDS) if s[2] is not None]
    for t_idx, (key, zh, en, lang, users, (lo, hi), minutes, polarity, scheme, author) in enumerate(TOOLS, start=1):
        tid = f"tool{t_idx:02d}"
        qtexts = []
        if polarity == "descending":
            start = (t_idx * 3) % len(DEVELOPMENT_POSITIVE)
            for j in range(5):
                qtexts.append(DEVELOPMENT_POSITIVE[(start + j) % len(DEVELOPMENT_POSITIVE)])
        else:
            n_sym = 3 + t_idx % 3
            for _ in range(n_sym):
                s_zh, s_en = SYMPTOMS[symptom_cursor % len(SYMPTOMS)]
                symptom_cursor += 1
                if symptom_cursor % 2 == 0:
                    qtexts.append((f"孩子是否{s_zh}", f"Does the child show this: {s_en}?"))
                else:
                    qtexts.append((f"孩子经常{s_zh}吗", f"Does the child often show this: {s_en}?"))
            for _ in range(2 if t_idx <= 19 else 1):
                s_idx = probes[probe_cursor % len(probes)]
                probe_cursor += 1
                probe = STANDARDS[s_idx][2]
                qtexts.append((probe, None))
        scheme_opts = OPTION_SCHEMES[scheme]
        per_q_max = max(s for _, _, s in scheme_opts)
        per_q_min = min(s for _, _, s in scheme_opts)
        n_q = len(qtexts)
        lo_total, hi_total = n_q * per_q_min, n_q * per_q_max
        boundary = lo_total + math.ceil((hi_total - lo_total) / 2)
        if polarity == "descending":
            boundary = lo_total + math.floor((hi_total - lo_total) / 2)
        rule = ("总分大于或等于筛查界限提示存在孤独症风险" if polarity == "ascending"
                else "总分小于或等于筛查界限提示发育落后，存在孤独症风险")
        tools.append({
            "id": tid, "Label": zh, "LabelEn": en,
            "Introduction": f"{zh}（{en}）是一种用于孤独症早期筛查的量表，共{n_q}题。",
            "IntroductionEn": f"{en} is a screening scale for the early detection of autism with {n_q} items.",
            "Author": author, "User": users, "Age": f"{lo}-{hi}", "Time": minutes,
            "Rule": rule, "ScreeningBoundary": boundary, "ScoringPolarity": polarity, "Language": lang,
        })
        for q_idx, (q_zh, q_en) in enumerate(qtexts, start=1):
            qid = f"{tid}-q{q_idx:02d}"
            rec = {"id": qid, "tool": tid, "Label": q_zh}
            if q_en:
                rec["LabelEn"] = q_en
            questions.append(rec)
            for o_idx, (o_zh, o_en, score) in enumerate(scheme_opts, start=1):
                options.append({"id": f"{qid}-o{o_idx}", "question": qid, "Label": o_zh,
                                "LabelEn": o_en, "Score": score})
    return tools, questions, options


# ---------------------------------------------------------------- diseases
BASE_DISEASES = [
    ("AutismSpectrumDisorder", "孤独症谱系障碍", "Autism spectrum disorder", "35919005", "F84.0", ["孤独症", "自闭症"], ["Autism"]),
    ("ChildhoodAutism", "儿童孤独症", "Childhood autism", "408856003", "F84.0", ["儿童自闭症", "婴儿孤独症"], ["Infantile autism"]),
    ("AspergersSyndrome", "阿斯伯格综合症", "Asperger's syndrome", "23560001", "F84.5", ["阿斯伯格综合征", "阿斯伯格障碍"], ["Asperger disorder"]),
    ("AtypicalAutism", "非典型孤独症", "Atypical autism", "408857007", "F84.1", ["非典型自闭症"], []),
    ("RettSyndrome", "雷特综合征", "Rett syndrome", "68618008", "F84.2", ["瑞特综合征"], ["Rett's disorder"]),
    ("RettSyndrome", "非典型雷特综合征", "Atypical Rett syndrome", "702816000", "F84.2", [], []),
    ("ChildhoodDisintegrativeDisorder", "童年瓦解性障碍", "Childhood disintegrative disorder", "5741008", "F84.3", ["海勒综合征"], ["Heller's syndrome"]),
    ("PervasiveDevelopmentalDisorder", "广泛性发育障碍", "Pervasive developmental disorder", "231536004", "F84", [], ["PDD"]),
    ("PervasiveDevelopmentalDisorderUnspecified", "未特定的广泛性发育障碍", "Pervasive developmental disorder, unspecified", "9976000", "F84.9", [], ["PDD-NOS"]),
    ("OtherPervasiveDevelopmentalDisorder", "其他广泛性发育障碍", "Other pervasive developmental disorders", "191693001", "F84.8", [], []),
    ("OveractiveDisorderWithStereotypedMovements", "伴有精神发育迟滞和刻板动作的多动障碍", "Overactive disorder associated with mental retardation and stereotyped movements", "268680001", "F84.4", [], []),
    ("HighFunctioningAutism", "高功能孤独症", "High-functioning autism", "712803001", "F84.0", ["高功能自闭症"], []),
    ("RegressiveAutism", "退行性孤独症", "Regressive autism", "712802006", "F84.0", [], []),
    ("DevelopmentalLanguageDisorder", "发育性语言障碍", "Developmental language disorder", "229735005", "F80.9", [], []),
]
QUALIFIERS = [
    ("伴有智力障碍的", "with intellectual disability", "1"),
    ("不伴有智力障碍的", "without intellectual disability", "2"),
    ("伴有语言障碍的", "with language impairment", "3"),
    ("伴有已知遗传病的", "associated with a known genetic condition", "4"),
    ("伴有紧张症的", "with catatonia", "5"),
    ("伴有癫痫的", "with epilepsy", "6"),
    ("伴有技能丧失的", "with loss of previously acquired skills", "7"),
]
QUALIFIED_BASES = [0, 1, 3, 11, 12]


def disease_records(n_interventions, n_tools):
    recs = []
    diseases = []
    for cls, zh, en, sct, icd, syn, syn_en in BASE_DISEASES:
        diseases.append((cls, zh, en, sct, icd, syn, syn_en, None))
    for b in QUALIFIED_BASES:
        cls, zh, en, sct, icd, _, _ = BASE_DISEASES[b]
        for q_zh, q_en, q_code in QUALIFIERS:
            diseases.append((cls, q_zh + zh, f"{en} {q_en}", sct[:-1] + q_code + sct[-1], icd, [], [], b))
            if len(diseases) == 49:
                break
        if len(diseases) == 49:
            break
    assert len(diseases) == 49, len(diseases)
    for i, (cls, zh, en, sct, icd, syn, syn_en, base) in enumerate(diseases, start=1):
        rng = random.Random(1000 + i)
        asd_family = cls in ("AutismSpectrumDisorder", "ChildhoodAutism", "AspergersSyndrome", "AtypicalAutism",
                             "HighFunctioningAutism", "RegressiveAutism")
        if i == 1:
            symptoms = list(range(1, 66))
        elif asd_family:
            symptoms = sorted(rng.sample(range(1, 46), 12) + rng.sample(range(46, 66), 3))
        else:
            symptoms = sorted(rng.sample(range(1, 66), 8))
        rec = {
            "id": f"disease{i}", "class": cls, "Label": zh, "LabelEn": en, "SCTID": sct, "ICD10Code": icd,
            "Introduction": f"{zh}是一种起病于儿童早期的神经发育障碍，主要表现为社会交往和沟通障碍以及局限、重复的行为。",
            "IntroductionEn": f"{en} is a neurodevelopmental disorder with onset in early childhood.",
            "PatientGroups": "儿童" if cls != "RettSyndrome" else "女性儿童",
            "PatientGroupsEn": "children" if cls != "RettSyndrome" else "female children",
            "Pathogeny": "遗传和环境因素" if cls != "RettSyndrome" else "MECP2基因突变",
            "PathogenyEn": "genetic and environmental factors" if cls != "RettSyndrome" else "mutations of the MECP2 gene",
            "hasSymptom": [f"symptom{s}" for s in symptoms],
        }
        if syn:
            rec["Synonym"] = syn
        if syn_en:
            rec["SynonymEn"] = syn_en
        if asd_family or cls == "PervasiveDevelopmentalDisorder":
            rec["hasDiagnosticStandard"] = [f"standard{s}" for s in range(1, 44)] if i == 1 else \
                [f"standard{s}" for s in sorted(rng.sample(range(1, 44), 10))]
            rec["hasScreeningTool"] = [f"tool{t:02d}" for t in range(1, n_tools + 1)]
            rec["hasIntervention"] = [f"intervention{k:02d}" for k in range(1, n_interventions + 1)]
        recs.append(rec)
    return recs


# ---------------------------------------------------------------- interventions
INTERVENTIONS = [
    ("前因干预", "Antecedent-Based Interventions"),
    ("辅助和替代沟通", "Augmentative and Alternative Communication"),
    ("行为动量干预", "Behavioral Momentum Intervention"),
    ("认知行为教学策略", "Cognitive Behavioral/Instructional Strategies"),
    ("区别强化", "Differential Reinforcement"),
    ("直接教学", "Direct Instruction"),
    ("离散单元教学", "Discrete Trial Training"),
    ("运动与活动", "Exercise and Movement"),
    ("消退", "Extinction"),
    ("功能性行为评估", "Functional Behavioral Assessment"),
    ("功能性沟通训练", "Functional Communication Training"),
    ("示范", "Modeling"),
    ("音乐介导干预", "Music-Mediated Intervention"),
    ("自然情境干预", "Naturalistic Intervention"),
    ("家长实施的干预", "Parent-Implemented Intervention"),
    ("同伴介入的教学与干预", "Peer-Based Instruction and Intervention"),
    ("提示", "Prompting"),
    ("强化", "Reinforcement"),
    ("反应中断与重新定向", "Response Interruption/Redirection"),
    ("自我管理", "Self-Management"),
    ("感觉统合", "Sensory Integration"),
    ("社交故事", "Social Narratives"),
    ("社交技能训练", "Social Skills Training"),
    ("任务分析", "Task Analysis"),
    ("科技辅助的教学与干预", "Technology-Aided Instruction and Intervention"),
    ("时间延迟", "Time Delay"),
    ("视频示范", "Video Modeling"),
    ("视觉支持", "Visual Supports"),
]


def intervention_records():
    return [{"id": f"intervention{i:02d}", "Label": zh, "LabelEn": en,
             "Introduction": f"{zh}是一种经循证研究支持的孤独症干预方法。",
             "IntroductionEn": f"{en} is an evidence-based practice for autism."}
            for i, (zh, en) in enumerate(INTERVENTIONS, start=1)]


# ---------------------------------------------------------------- divisions
# code, name, english, level, parent, population, lat, lng
DIVISIONS = [
    ("320000", "江苏省", "Jiangsu", "province", None, 84748016, 32.0617, 118.7778),
    ("110000", "北京市", "Beijing", "province", None, 21893095, 39.9042, 116.4074),
    ("310000", "上海市", "Shanghai", "province", None, 24870895, 31.2304, 121.4737),
    ("440000", "广东省", "Guangdong", "province", None, 126012510, 23.1317, 113.2663),
    ("330000", "浙江省", "Zhejiang", "province", None, 64567588, 30.2875, 120.1536),
    ("320100", "南京市", "Nanjing", "city", "320000", 9314685, 32.0603, 118.7969),
    ("320500", "苏州市", "Suzhou", "city", "320000", 12748262, 31.2990, 120.5853),
    ("110100", "北京市", "Beijing City", "city", "110000", 21893095, 39.9042, 116.4074),
    ("310100", "上海市", "Shanghai City", "city", "310000", 24870895, 31.2304, 121.4737),
    ("440100", "广州市", "Guangzhou", "city", "440000", 18676605, 23.1291, 113.2644),
    ("440300", "深圳市", "Shenzhen", "city", "440000", 17494398, 22.5431, 114.0579),
    ("330100", "杭州市", "Hangzhou", "city", "330000", 11936010, 30.2741, 120.1551),
    ("320102", "玄武区", "Xuanwu", "district", "320100", 537825, 32.0487, 118.7977),
    ("320104", "秦淮区", "Qinhuai", "district", "320100", 740809, 32.0394, 118.7944),
    ("320106", "鼓楼区", "Gulou", "district", "320100", 940387, 32.0665, 118.7701),
    ("320115", "江宁区", "Jiangning", "district", "320100", 1926117, 31.9529, 118.8399),
    ("320508", "姑苏区", "Gusu", "district", "320500", 924079, 31.3117, 120.6170),
    ("320506", "吴中区", "Wuzhong", "district", "320500", 1389849, 31.2626, 120.6322),
    ("110101", "东城区", "Dongcheng", "district", "110100", 708829, 39.9288, 116.4160),
    ("110102", "西城区", "Xicheng", "district", "110100", 1106214, 39.9123, 116.3660),
    ("110105", "朝阳区", "Chaoyang", "district", "110100", 3452460, 39.9215, 116.4435),
    ("110108", "海淀区", "Haidian", "district", "110100", 3133469, 39.9593, 116.2981),
    ("310101", "黄浦区", "Huangpu", "district", "310100", 662030, 31.2316, 121.4846),
    ("310104", "徐汇区", "Xuhui", "district", "310100", 1113078, 31.1885, 121.4365),
    ("310112", "闵行区", "Minhang", "district", "310100", 2653489, 31.1128, 121.3816),
    ("310115", "浦东新区", "Pudong", "district", "310100", 5681512, 31.2215, 121.5447),
    ("440104", "越秀区", "Yuexiu", "district", "440100", 1038863, 23.1290, 113.2668),
    ("440106", "天河区", "Tianhe", "district", "440100", 2241826, 23.1246, 113.3613),
    ("440303", "罗湖区", "Luohu", "district", "440300", 1143801, 22.5482, 114.1315),
    ("440304", "福田区", "Futian", "district", "440300", 1553225, 22.5211, 114.0550),
    ("440305", "南山区", "Nanshan", "district", "440300", 1795826, 22.5333, 113.9300),
    ("330102", "上城区", "Shangcheng", "district", "330100", 1323467, 30.2424, 120.1695),
    ("330106", "西湖区", "Xihu", "district", "330100", 1145071, 30.2594, 120.1300),
]


def division_records():
    out = []
    for code, name, en, level, parent, pop, lat, lng in DIVISIONS:
        rec = {"id": f"div{code}", "Name": name, "NameEn": en, "level": level, "Population": pop,
               "Lat": lat, "Lng": lng}
        if parent:
            rec["parent"] = f"div{parent}"
        out.append(rec)
    return out


# ---------------------------------------------------------------- hospitals and physicians
HOSPITALS = [
    ("hospital01", "南京脑科医院", "南京市鼓楼区广州路264号", "025-82296000", "三级甲等", 32.0566, 118.7719, "320106"),
    ("hospital02", "南京市儿童医院", "南京市鼓楼区广州路72号", "025-83117500", "三级甲等", 32.0547, 118.7826, "320106"),
    ("hospital03", "江苏省人民医院", "南京市鼓楼区广州路300号", "025-68303114", "三级甲等", 32.0579, 118.7675, "320106"),
    ("hospital04", "南京市妇幼保健院", "南京市秦淮区天妃巷123号", "025-52226111", "三级甲等", 32.0373, 118.7862, "320104"),
    ("hospital05", "东南大学附属中大医院", "南京市玄武区丁家桥87号", "025-83262000", "三级甲等", 32.0712, 118.7914, "320102"),
    ("hospital06", "苏州大学附属儿童医院", "苏州市姑苏区景德路303号", "0512-80692999", "三级甲等", 31.3116, 120.6151, "320508"),
    ("hospital07", "北京大学第六医院", "北京市海淀区花园北路51号", "010-82801983", "三级甲等", 39.9834, 116.3597, "110108"),
    ("hospital08", "首都儿科研究所附属儿童医院", "北京市朝阳区雅宝路2号", "010-85695756", "三级甲等", 39.9197, 116.4332, "110105"),
    ("hospital09", "北京儿童医院", "北京市西城区南礼士路56号", "010-59616161", "三级甲等", 39.9122, 116.3517, "110102"),
    ("hospital10", "北京安定医院", "北京市西城区德胜门外安康胡同5号", "010-58303000", "三级甲等", 39.9666, 116.3787, "110102"),
    ("hospital11", "上海市精神卫生中心", "上海市徐汇区宛平南路600号", "021-64387250", "三级甲等", 31.1833, 121.4423, "310104"),
    ("hospital12", "复旦大学附属儿科医院", "上海市闵行区万源路399号", "021-64931990", "三级甲等", 31.1257, 121.3947, "310112"),
    ("hospital13", "上海儿童医学中心", "上海市浦东新区东方路1678号", "021-38626161", "三级甲等", 31.2034, 121.5234, "310115"),
    ("hospital14", "中山大学附属第三医院", "广州市天河区天河路600号", "020-85253333", "三级甲等", 23.1355, 113.3353, "440106"),
    ("hospital15", "广州市妇女儿童医疗中心", "广州市天河区金穗路9号", "020-38076000", "三级甲等", 23.1223, 113.3246, "440106"),
    ("hospital16", "深圳市儿童医院", "深圳市福田区益田路7019号", "0755-83936101", "三级甲等", 22.5530, 114.0538, "440304"),
    ("hospital17", "深圳市康宁医院", "深圳市罗湖区翠竹路1080号", "0755-25617000", "三级甲等", 22.5614, 114.1242, "440303"),
    ("hospital18", "浙江大学医学院附属儿童医院", "杭州市上城区竹竿巷57号", "0571-86670000", "三级甲等", 30.2653, 120.1662, "330102"),
    ("hospital19", "杭州市第七人民医院", "杭州市西湖区天目山路305号", "0571-85126500", "三级甲等", 30.2745, 120.1210, "330106"),
    ("hospital20", "南京市秦淮区妇幼保健所", "南京市秦淮区长乐路211号", "025-84400000", "二级甲等", 32.0281, 118.7903, "320104"),
    # duplicates harvested from a second source
    ("hospital21", "南京医科大学附属脑科医院", "南京市广州路264号", "０２５-８２２９６０００", "三级甲等", 32.0566, 118.7719, "320106"),
    ("hospital22", "北京大学精神卫生研究所", " 北京市海淀区花园北路51号 ", "010-62723800", "三级甲等", 39.9834, 116.3597, "110108"),
    ("hospital23", "上海市精神卫生中心(徐汇院区)", "上海市宛平南路600号", "021-64387250", "三级甲等", 31.1833, 121.4423, "310104"),
    ("hospital24", "深圳市儿童医院(福田)", "深圳市福田区益田路7019号", "0755-83008300", "三级甲等", 22.5530, 114.0538, "440304"),
    ("hospital25", "北大六院", "北京市海淀区北三环西路2号", "010-62723800", "", 39.9834, 116.3597, "110108"),
]
FUSED_HOSPITALS = 20

PHYSICIANS_PER_HOSPITAL = [4, 4, 3, 3, 3, 3, 4, 3, 4, 3, 4, 3, 3, 3, 3, 3, 3, 3, 3, 2]
SURNAMES = "王李张刘陈杨黄赵吴周徐孙马朱胡郭何高林罗郑梁谢宋唐许韩冯邓曹彭曾肖田董袁潘于蒋蔡余杜叶程苏魏吕丁任沈姚卢姜崔钟谭陆汪范金石廖贾夏韦付方白邹孟熊秦邱江尹薛闫段雷侯龙史陶黎贺顾毛郝龚邵万钱严覃武戴莫孔向汤"
GIVEN = ["建国", "秀英", "海燕", "志强", "丽华", "文静", "晓明", "红梅", "国庆", "春燕", "立新", "玉兰", "俊杰", "雪梅",
         "永红", "子涵", "欣怡", "浩然", "思远", "雨婷", "明轩", "佳怡", "宇航", "梦琪"]
TITLES = ["主任医师", "副主任医师", "主治医师", "住院医师"]
DEPARTMENTS = ["儿童保健科", "精神科", "儿童心理科", "发育行为儿科", "神经内科"]
SPECIALTIES = ["各类儿童精神障碍", "孤独症谱系障碍的诊断与干预", "儿童发育迟缓与语言障碍", "儿童注意缺陷多动障碍", "儿童情绪与行为问题"]


def physician_records():
    out = []
    n = 0
    by_hospital = {}
    for h_idx, count in enumerate(PHYSICIANS_PER_HOSPITAL, start=1):
        for _ in range(count):
            n += 1
            name = SURNAMES[(n * 7) % len(SURNAMES)] + GIVEN[(n * 5) % len(GIVEN)]
            rec = {
                "id": f"physician{n:03d}", "Name": name, "Title": TITLES[(n * 3 + h_idx) % 4],
                "Specialty": SPECIALTIES[n % len(SPECIALTIES)], "HospitalDepartment": DEPARTMENTS[(n + h_idx) % len(DEPARTMENTS)],
                "workAt": f"hospital{h_idx:02d}", "specializeIn": ["disease1"],
                "ThumbsUp": (n * 13) % 40, "ThumbsDown": (n * 7) % 9,
            }
            out.append(rec)
            by_hospital.setdefault(h_idx, []).append(rec)
    fused = len(out)
    # duplicates from the second source: same name and title at a fused hospital
    dups = [(21, by_hospital[1][0]), (21, by_hospital[1][1]), (21, by_hospital[1][2]),
            (22, by_hospital[7][0]), (25, by_hospital[7][1]), (23, by_hospital[11][0])]
    for h_idx, src in dups:
        n += 1
        rec = dict(src)
        rec["id"] = f"physician{n:03d}"
        rec["workAt"] = f"hospital{h_idx:02d}"
        rec["Specialty"] = src["Specialty"] + "，擅长早期筛查"
        rec["ThumbsUp"], rec["ThumbsDown"] = 1, 0
        out.append(rec)
    # same name as a physician of hospital16 but a different title: kept apart
    n += 1
    src = by_hospital[16][0]
    rec = dict(src)
    rec["id"] = f"physician{n:03d}"
    rec["workAt"] = "hospital24"
    rec["Title"] = next(t for t in TITLES if t != src["Title"])
    rec["ThumbsUp"], rec["ThumbsDown"] = 0, 0
    out.append(rec)
    fused += 1
    return out, fused


def hospital_records():
    return [{"id": hid, "Name": name, "Address": addr, "ContactDetails": tel, "HospitalLevel": level,
             "Lat": lat, "Lng": lng, "locateAt": f"div{div}"}
            for hid, name, addr, tel, level, lat, lng, div in HOSPITALS]


# ---------------------------------------------------------------- QA patterns
def iri_c(name):
    return f"<{CLASS_NS}{name}>"


def iri_p(name):
    return f"<{PROP_NS}{name}>"


TYPE = f"<{RDF_TYPE}>"

PATTERNS = [
    {"id": "SYMPTOMS_OF_DISEASE",
     "matcher": ["^{disease}(?:都|一般|通常|主要)?有(?:哪些|什么)(?:临床表现|症状|表现)$",
                 "^{disease}的(?:临床表现|症状|表现)(?:有哪些|是什么)?$"],
     "slots": {"disease": "Disease"},
     "template": "SELECT ?s WHERE { {disease} " + iri_p("hasSymptom") + " ?s }",
     "answer_kind": "entity_list",
     "example_questions": ["孤独症都有哪些临床表现？", "阿斯伯格综合症的症状有哪些"]},
    {"id": "LIST_INTERVENTIONS",
     "matcher": ["^(?:有)?(?:哪些|什么)(?:干预方法|干预措施|治疗方法|干预)(?:是)?(?:有效|管用)的?$",
                 "^(?:有效的)?(?:干预方法|干预措施)有哪些$"],
     "slots": {},
     "template": "SELECT ?m WHERE { ?m " + TYPE + " " + iri_c("EvidenceBasedPractice") + " }",
     "answer_kind": "entity_list",
     "example_questions": ["哪些干预方法是有效的？", "干预方法有哪些"]},
    {"id": "DISEASE_PATHOGENY",
     "matcher": ["^{disease}的?(?:病因|发病原因|原因)(?:是什么|有哪些)?$",
                 "^{disease}是(?:由)?什么(?:原因)?(?:引起|导致)的$"],
     "slots": {"disease": "Disease"},
     "template": "SELECT ?x WHERE { {disease} " + iri_p("Pathogeny") + " ?x }",
     "answer_kind": "literal",
     "example_questions": ["自闭症的病因是什么？", "雷特综合征是什么原因引起的"]},
    {"id": "DISEASE_PATIENT_GROUPS",
     "matcher": ["^{disease}的?(?:患者人群|易感人群|高发人群|患病人群)(?:是|有)?(?:哪些|什么)?(?:人)?$",
                 "^哪些人(?:容易|易)?(?:患|得){disease}$"],
     "slots": {"disease": "Disease"},
     "template": "SELECT ?x WHERE { {disease} " + iri_p("PatientGroups") + " ?x }",
     "answer_kind": "literal",
     "example_questions": ["雷特综合征的患者人群是哪些？", "哪些人容易患儿童孤独症"]},
    {"id": "DISEASE_SYNONYMS",
     "matcher": ["^{disease}的?(?:别名|同义词|其他名称)(?:有哪些|是什么)?$", "^{disease}(?:又|还)叫什么$"],
     "slots": {"disease": "Disease"},
     "template": "SELECT ?x WHERE { {disease} " + iri_p("Synonym") + " ?x }",
     "answer_kind": "literal",
     "example_questions": ["儿童孤独症的别名有哪些？", "孤独症谱系障碍又叫什么"]},
    {"id": "DISEASE_ICD_CODE",
     "matcher": ["^{disease}的?icd-?10(?:编码|代码|编号)?(?:是什么|是多少)?$"],
     "slots": {"disease": "Disease"},
     "template": "SELECT ?x WHERE { {disease} " + iri_p("ICD10Code") + " ?x }",
     "answer_kind": "literal",
     "example_questions": ["阿斯伯格综合症的ICD-10编码是什么？"]},
    {"id": "DISEASE_STANDARDS",
     "matcher": ["^{disease}的?诊断标准(?:是什么|有哪些)?$", "^如何诊断{disease}$"],
     "slots": {"disease": "Disease"},
     "template": "SELECT ?x WHERE { {disease} " + iri_p("hasDiagnosticStandard") + " ?x }",
     "answer_kind": "entity_list",
     "example_questions": ["孤独症谱系障碍的诊断标准是什么？"]},
    {"id": "DISEASE_SCREENING_TOOLS",
     "matcher": ["^{disease}(?:可以|能)?用(?:哪些|什么)(?:量表|工具|筛查工具)(?:筛查|评估)?$",
                 "^筛查{disease}的(?:量表|工具)有哪些$"],
     "slots": {"disease": "Disease"},
     "template": "SELECT ?x WHERE { {disease} " + iri_p("hasScreeningTool") + " ?x }",
     "answer_kind": "entity_list",
     "example_questions": ["孤独症可以用哪些量表筛查？"]},
    {"id": "SYMPTOM_DISEASES",
     "matcher": ["^{symptom}是(?:哪些|什么)(?:病|疾病)的(?:症状|表现)$"],
     "slots": {"symptom": "Symptom"},
     "template": "SELECT ?x WHERE { ?x " + iri_p("hasSymptom") + " {symptom} }",
     "answer_kind": "entity_list",
     "example_questions": ["不会进行对视是哪些疾病的症状？"]},
    {"id": "SCALES_BY_AGE",
     "matcher": ["^{age}岁的?(?:孩子|儿童|宝宝)?(?:可以|能|适合)?(?:用|做)?(?:哪些|什么)(?:筛查)?量表$"],
     "slots": {"age": "number"},
     "template": "SELECT ?t WHERE { ?t " + iri_p("MinAge") + " ?lo . ?t " + iri_p("MaxAge")
                 + " ?hi . FILTER(?lo <= {age}) FILTER(?hi >= {age}) }",
     "answer_kind": "entity_list",
     "example_questions": ["3岁的孩子可以用哪些量表？"]},
    {"id": "SCALE_INTRODUCTION",
     "matcher": ["^{scale}(?:量表)?(?:是什么|怎么用|的介绍|介绍)$", "^什么是{scale}(?:量表)?$"],
     "slots": {"scale": "ScreeningTool"},
     "template": "SELECT ?x WHERE { {scale} " + iri_p("Introduction") + " ?x }",
     "answer_kind": "literal",
     "example_questions": ["M-CHAT量表是什么？"]},
    {"id": "DISEASE_DEFINITION",
     "matcher": ["^什么是{disease}$", "^{disease}是什么(?:病)?$", "^{disease}的?(?:定义|简介)$"],
     "slots": {"disease": "Disease"},
     "template": "SELECT ?x WHERE { {disease} " + iri_p("Introduction") + " ?x }",
     "answer_kind": "description",
     "example_questions": ["什么是阿斯伯格综合症？"]},
    {"id": "EXPERTS_BY_CITY",
     "matcher": ["^{city}(?:有)?(?:哪些|什么)(?:医生|专家)$", "^{city}的(?:孤独症)?(?:医生|专家)有哪些$"],
     "slots": {"city": "City"},
     "template": "SELECT ?p WHERE { ?p " + iri_p("workAt") + " ?h . ?h " + iri_p("locateAt") + " ?d . ?d "
                 + iri_p("locateAt") + " {city} }",
     "answer_kind": "entity_list",
     "example_questions": ["南京市有哪些医生？"]},
    {"id": "HOSPITALS_BY_CITY",
     "matcher": ["^{city}(?:有)?(?:哪些|什么)医院(?:可以)?(?:看孤独症)?$", "^{city}的医院有哪些$"],
     "slots": {"city": "City"},
     "template": "SELECT ?h WHERE { ?h " + iri_p("locateAt") + " ?d . ?d " + iri_p("locateAt") + " {city} }",
     "answer_kind": "entity_list",
     "example_questions": ["北京市有哪些医院？", "上海市的医院有哪些"]},
]

COVERAGE_QUESTIONS = [
    "孤独症都有哪些临床表现？",
    "哪些干预方法是有效的？",
    "什么是阿斯伯格综合症？",
    "自闭症的病因是什么？",
    "雷特综合征的患者人群是哪些？",
    "3岁的孩子可以用哪些量表？",
    "南京市有哪些医生？",
    "北京市有哪些医院？",
    "孤独症谱系障碍的诊断标准是什么？",
    "儿童孤独症的别名有哪些？",
    "阿斯伯格综合症的ICD-10编码是什么？",
    "M-CHAT量表是什么？",
    "孤独症可以用哪些量表筛查？",
    "不会进行对视是哪些疾病的症状？",
    "儿童孤独症",
    "孤独症能治愈吗？",
    "上海市有哪些医院？",
    "孩子晚上总做噩梦怎么办？",
    "今天天气怎么样？",
    "如何提高孩子的数学成绩？",
]

INTENT_QUESTIONS = [
    ("我想给孩子做个筛查", True),
    ("怎么给孩子做孤独症筛查", True),
    ("有没有孤独症的自测量表", True),
    ("我想做一个孤独症评估", True),
    ("孩子需要做发育测评吗", True),
    ("在哪里可以做孤独症测评", True),
    ("M-CHAT量表怎么填", True),
    ("3岁的孩子可以用哪些量表？", True),
    ("想测试一下孩子是不是自闭症", True),
    ("帮我评估一下孩子的情况", True),
    ("孩子两岁了需要筛查孤独症吗", True),
    ("自闭症自测", True),
    ("有什么在线测评工具", True),
    ("I want a screening for my child", True),
    ("autism assessment for toddlers", True),
    ("where can I take an autism screening test", True),
    ("请推荐一个筛查量表", True),
    ("孩子可以做什么评估", True),
    ("ABC量表适合几岁", True),
    ("做一次孤独症风险测试", True),
    ("什么是孤独症", False),
    ("孤独症都有哪些临床表现？", False),
    ("哪些干预方法是有效的？", False),
    ("自闭症的病因是什么？", False),
    ("南京市有哪些医生？", False),
    ("北京市有哪些医院？", False),
    ("阿斯伯格综合症的ICD-10编码是什么？", False),
    ("孤独症能治愈吗？", False),
    ("孩子不说话怎么办", False),
    ("雷特综合征的患者人群是哪些？", False),
    ("儿童孤独症的别名有哪些？", False),
    ("孩子不喜欢和别人玩正常吗", False),
    ("how to help a child with autism", False),
    ("what causes autism", False),
    ("孤独症孩子吃什么好", False),
    ("孤独症会遗传吗", False),
    ("上海市有哪些医院？", False),
    ("不会进行对视是哪些疾病的症状？", False),
    ("孩子总是踮脚走路", False),
    ("孤独症谱系障碍的诊断标准是什么？", False),
]
assert len(INTENT_QUESTIONS) == 40


def label_records():
    """Five annotators, 732 triples, per-annotator correct counts averaging 712."""
    rng = random.Random(20230801)
    triples = []
    for e in range(100):
        per = 7 if e < 32 else 8
        if e >= 100 - 12:
            per = 6
        for j in range(per):
            triples.append((e, j))
    triples = triples[:732]
    while len(triples) < 732:
        triples.append((99, len(triples)))
    assert len(triples) == 732
    correct_counts = [700, 708, 712, 716, 724]
    out = []
    for a, n_correct in enumerate(correct_counts, start=1):
        idx = list(range(732))
        rng.shuffle(idx)
        correct = set(idx[:n_correct])
        rest = idx[n_correct:]
        unknown = set(rest[: len(rest) // 3])
        for k, (e, j) in enumerate(triples):
            choice = "correct" if k in correct else ("unknown" if k in unknown else "incorrect")
            s = f"{INST_NS}sample{e:03d}"
            line = f"<{s}> <{PROP_NS}Introduction> \"value {j}\"@zh ."
            out.append({"annotator": f"annotator{a}", "entity": s, "triple": line, "choice": choice})
    return out


def dump_jsonl(path, records):
    with open(path, "w", encoding="utf-8") as f:
        for r in records:
            f.write(json.dumps(r, ensure_ascii=False) + "\n")


def main():
    os.makedirs(KB, exist_ok=True)
    os.makedirs(EVAL, exist_ok=True)
    write_ontology()
    symptoms = symptom_records()
    standards = standard_records()
    tools, questions, options = tool_records()
    interventions = intervention_records()
    diseases = disease_records(len(interventions), len(tools))
    divisions = division_records()
    hospitals = hospital_records()
    physicians, fused_physicians = physician_records()
    files = {
        "diseases.jsonl": diseases, "symptoms.jsonl": symptoms, "standards.jsonl": standards,
        "tools.jsonl": tools, "questions.jsonl": questions, "options.jsonl": options,
        "physicians.jsonl": physicians, "hospitals.jsonl": hospitals, "divisions.jsonl": divisions,
        "interventions.jsonl": interventions,
    }
    for name, recs in files.items():
        dump_jsonl(os.path.join(KB, name), recs)
    dump_jsonl(os.path.join(KB, "patterns.jsonl"), PATTERNS)
    manifest = {
        "raw": {"disease": len(diseases), "symptom": len(symptoms), "diagnostic_standard": len(standards),
                "screening_tool": len(tools), "screening_question": len(questions), "option": len(options),
                "physician": len(physicians), "hospital": len(hospitals), "division": len(divisions),
                "intervention": len(interventions)},
        "fused": {"disease": len(diseases), "symptom": len(symptoms), "diagnostic_standard": len(standards),
                  "screening_tool": len(tools), "screening_question": len(questions), "option": len(options),
                  "physician": fused_physicians, "hospital": FUSED_HOSPITALS, "division": len(divisions),
                  "intervention": len(interventions)},
        "full_kb_targets": {"entities": 6166, "triples": 69290, "physician": 499, "hospital": 270,
                            "ontology_classes": 32, "datatype_properties": 25, "object_properties": 16},
    }
    with open(os.path.join(KB, "manifest.json"), "w", encoding="utf-8") as f:
        json.dump(manifest, f, ensure_ascii=False, indent=2)
        f.write("\n")
    dump_jsonl(os.path.join(EVAL, "coverage_questions.jsonl"), [{"question": q} for q in COVERAGE_QUESTIONS])
    dump_jsonl(os.path.join(EVAL, "intent_questions.jsonl"),
               [{"question": q, "screening": lab} for q, lab in INTENT_QUESTIONS])
    dump_jsonl(os.path.join(EVAL, "labels.jsonl"), label_records())


if __name__ == "__main__":
    main()
