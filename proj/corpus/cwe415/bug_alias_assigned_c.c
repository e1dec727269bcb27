int cwe415_bug_alias_assigned_c_main(int c) {
  char *p = calloc(4, 4);
  char *q;
  q = p;
  free(q);
  free(p);
  return 0;
}
