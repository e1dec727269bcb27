int cwe401_ok_freed_through_alias_m_main(int c) {
  char *p = malloc(16);
  char *q = p;
  free(q);
  return 0;
}
